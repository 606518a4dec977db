import json

import numpy as np
import pytest

from bugdebt import (
    Dataset,
    MlpConfig,
    ModelLoadError,
    load_model,
    save_model,
    train_linear,
    train_mlp,
    train_model_tree,
)
from bugdebt.learn.io import model_from_obj, model_to_obj


@pytest.fixture(scope="module")
def planted():
    rng = np.random.default_rng(50)
    X = rng.uniform(-3, 3, size=(80, 9))
    y = np.where(X[:, 0] <= 0.0, 2.0 * X[:, 1], -X[:, 2] + 4.0) + rng.normal(scale=0.1, size=80)
    return Dataset(features=X, target=y), rng.normal(size=(25, 9))


class TestRoundTrip:
    def test_linear(self, tmp_path, planted):
        data, probe = planted
        model = train_linear(data)
        path = tmp_path / "linear.json"
        save_model(model, path)
        back = load_model(path)
        assert np.array_equal(back.predict_many(probe), model.predict_many(probe))

    def test_tree(self, tmp_path, planted):
        data, probe = planted
        model = train_model_tree(data)
        path = tmp_path / "tree.json"
        save_model(model, path)
        back = load_model(path)
        assert np.array_equal(back.predict_many(probe), model.predict_many(probe))

    def test_mlp(self, tmp_path, planted):
        data, probe = planted
        model = train_mlp(data, MlpConfig(epochs=100, seed=4))
        path = tmp_path / "mlp.json"
        save_model(model, path)
        back = load_model(path)
        assert np.array_equal(back.predict_many(probe), model.predict_many(probe))
        assert back.seed == 4

    def test_file_layout(self, tmp_path, planted):
        data, _ = planted
        path = tmp_path / "m.json"
        save_model(train_linear(data), path)
        obj = json.loads(path.read_text())
        assert obj["format_version"] == 1
        assert obj["kind"] == "linear"
        assert obj["seed"] is None
        assert set(obj["params"]) == {"weights", "intercept"}


class TestLoadErrors:
    def _load(self, tmp_path, text: str):
        path = tmp_path / "bad.json"
        path.write_text(text)
        return load_model(path)

    def test_not_json(self, tmp_path):
        with pytest.raises(ModelLoadError, match="not valid JSON"):
            self._load(tmp_path, "{nope")

    def test_wrong_version(self, tmp_path, planted):
        data, _ = planted
        obj = model_to_obj(train_linear(data))
        obj["format_version"] = 99
        with pytest.raises(ModelLoadError, match="format_version"):
            model_from_obj(obj)

    def test_unknown_kind(self, tmp_path, planted):
        data, _ = planted
        obj = model_to_obj(train_linear(data))
        obj["kind"] = "forest"
        with pytest.raises(ModelLoadError, match="unknown model kind"):
            model_from_obj(obj)

    def test_missing_params_key(self, planted):
        data, _ = planted
        obj = model_to_obj(train_linear(data))
        del obj["params"]["intercept"]
        with pytest.raises(ModelLoadError, match="intercept"):
            model_from_obj(obj)

    def test_non_finite_weights(self, planted):
        data, _ = planted
        obj = model_to_obj(train_linear(data))
        obj["params"]["weights"][0] = float("nan")
        with pytest.raises(ModelLoadError, match="non-finite"):
            model_from_obj(obj)

    def test_tree_feature_out_of_range(self, planted):
        data, _ = planted
        obj = model_to_obj(train_model_tree(data))
        node = obj["params"]["root"]
        assert node["node"] == "split"
        node["feature"] = 99
        with pytest.raises(ModelLoadError, match="out of range"):
            model_from_obj(obj)

    def test_mlp_shape_mismatch(self, planted):
        data, _ = planted
        obj = model_to_obj(train_mlp(data, MlpConfig(epochs=20, seed=0)))
        obj["params"]["w_out"] = obj["params"]["w_out"][:-1]
        with pytest.raises(ModelLoadError, match="inconsistent"):
            model_from_obj(obj)

    def test_mlp_zero_y_std(self, planted):
        data, _ = planted
        obj = model_to_obj(train_mlp(data, MlpConfig(epochs=20, seed=0)))
        obj["norm"]["y_std"] = 0.0
        with pytest.raises(ModelLoadError, match="y_std"):
            model_from_obj(obj)

    def test_top_level_not_object(self):
        with pytest.raises(ModelLoadError, match="not an object"):
            model_from_obj([1, 2, 3])
