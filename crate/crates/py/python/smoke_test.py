"""Smoke test for the pylayered extension.

Build it first, e.g. `maturin develop` from crates/py, or copy the built
cdylib next to this script as pylayered.so.
"""

import json
import os

import pylayered

HERE = os.path.dirname(os.path.abspath(__file__))
FIXTURES = os.path.join(HERE, "..", "..", "core", "tests", "fixtures")


def main():
    classes = pylayered.enumerate(2)
    assert len(classes) == 2, classes
    assert len(pylayered.enumerate(3)) == 5

    theta = pylayered.PantsGraph.theta()
    dumbbell = pylayered.PantsGraph.dumbbell()
    assert not theta.is_isomorphic(dumbbell)
    assert pylayered.PantsGraph.from_json(theta.to_json()) == theta
    assert dumbbell.a_move(2, "X2", 3, 0).is_isomorphic(theta)

    with open(os.path.join(FIXTURES, "theta3a.path.json")) as f:
        product = pylayered.build_product_model(f.read())
    assert product.euler_characteristic() == -2
    assert product.internal_face_count() == 4

    spine = pylayered.build_fat_spine(json.dumps({"leaf": {"kind": "genus_two"}}))
    assert spine.euler_characteristic() == -1
    assert spine.induced_decomposition().is_isomorphic(dumbbell)

    assert pylayered.layer_number_lower_bound(theta, 2) == 1
    assert pylayered.cyclic_reduce("x2 x1 x2 X2") == "x1 x2"
    verdict = json.loads(pylayered.free_group_verdict(json.dumps({"rank": 2, "words": {"0": "x1 X1"}}), 0))
    assert verdict["kind"] == "bounds_disk"

    model, cert = pylayered.assemble(os.path.join(FIXTURES, "double.manifest.json"), certify=True)
    assert model.closed and model.euler_characteristic() == 0
    assert json.loads(cert)["knotted"]
    print("pylayered smoke test passed")


if __name__ == "__main__":
    main()
