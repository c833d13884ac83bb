import json

import pytest

from enclosure import fileformat as ff
from enclosure.enclose import enclose_hamiltonian

from _support import k3_singles


def k3_file(**params):
    return ff.InstanceFile(k3_singles(), 1, ["a", "b", "c"], params)


def test_roundtrip():
    inst = k3_file(mu=2, m=1, mode="hamiltonian")
    back = ff.loads_instance(ff.dumps(ff.instance_to_dict(inst)))
    assert back.decomposition == inst.decomposition
    assert back.labels == ["a", "b", "c"] and back.params == inst.params and back.lam == 1


def test_dumps_is_stable_json():
    text = ff.dumps(ff.instance_to_dict(k3_file()))
    assert json.loads(text)["classes"] == [[["a", "b"]], [["b", "c"]], [["a", "c"]]]
    assert text == ff.dumps(ff.instance_to_dict(k3_file()))
    assert "    [[\"b\", \"c\"]],\n" in text


def test_hash_ignores_params():
    assert ff.instance_hash(k3_file()) == ff.instance_hash(k3_file(mu=3))


def test_labels_default_to_integers():
    doc = {"n": 3, "lambda": 1, "classes": [[[0, 1]], [[1, 2]], [[0, 2]]]}
    assert ff.instance_from_dict(doc).labels == [0, 1, 2]


@pytest.mark.parametrize("doc, match", [
    ({"n": 3, "lambda": 1, "classes": [[[0, 1]], [[1, 2]]]}, "decompose"),
    ({"n": 3, "lambda": 1, "classes": [[[0, 1]], [[1, 2]], [[0, 9]]]}, "unknown vertex"),
    ({"n": 3, "lambda": 1, "vertices": ["a", "a", "b"], "classes": []}, "duplicate"),
    ({"n": 3, "classes": []}, "missing"),
    ({"n": 4, "lambda": 1, "classes": [[[0, 1], [0, 2], [0, 3]], [[1, 2], [1, 3], [2, 3]]]}, "degree"),
    ([1, 2], "object"),
])
def test_bad_instances(doc, match):
    with pytest.raises(ff.FormatError, match=match):
        ff.instance_from_dict(doc)


def test_not_json():
    with pytest.raises(ff.FormatError):
        ff.loads_instance("{nope")


def test_certificate_roundtrip(tmp_path):
    inst = k3_file()
    cert = enclose_hamiltonian(inst.decomposition, 2, 1)
    doc = ff.certificate_to_dict(inst, cert.output, 2, 1, "hamiltonian", cert.transcript)
    path = tmp_path / "c.json"
    path.write_text(ff.dumps(doc))
    back = ff.read_certificate(path)
    assert back.decomposition == cert.output
    assert back.labels == ["a", "b", "c", "new0"]
    assert back.instance_sha256 == ff.instance_hash(inst)


def test_new_labels_avoid_collisions():
    assert ff.new_labels(["new0", 1], 2) == ["new1", "new2"]
