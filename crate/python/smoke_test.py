"""Smoke test for the hamnet Python extension.

Build and install first:
    maturin build --release -m crates/py/Cargo.toml
    pip install target/wheels/hamnet-*.whl
"""

import json
import math

import hamnet


def main():
    assert "cube" in hamnet.fixture_names()

    cube = hamnet.Polyhedron.fixture("cube")
    assert (cube.num_vertices, cube.num_edges, cube.num_faces) == (8, 12, 6)
    assert all(ok for _, ok, _ in cube.validate())
    assert "1-4-8-7-3-2-6-5" in cube.quasigeodesics()

    ico = hamnet.Polyhedron.fixture("icosahedron")
    assert ico.quasigeodesics() == []
    assert len(ico.hamiltonian_cycles(limit=3)) == 3

    pyramid = hamnet.Polyhedron.fixture("square_pyramid_octa_half")
    ok, split = pyramid.side_split("12534")
    assert ok
    values = sorted({round(a / math.pi, 9) for _, left, right in split for a in (left, right)})
    assert values == [round(x, 9) for x in (1 / 3, 1 / 2, 2 / 3, 5 / 6, 1)], values

    net = json.loads(cube.unfold_json("15623784", edge=(1, 5)))
    assert net["join_edge"] == [1, 5] and len(net["faces"]) == 6
    passed, report = cube.verify(json.dumps(net))
    assert passed, report
    assert cube.unfold_svg("15623784").count('<path class="face') == 6
    assert len(cube.nets("15623784", dedupe=True)) == 2

    off = hamnet.Polyhedron.from_off(ico.to_off())
    assert off.faces() == ico.faces()
    assert abs(sum(off.curvature(v) for v in range(1, 13)) - 4 * math.pi) < 1e-9

    rnd = hamnet.Polyhedron.random(8, 1)
    assert (rnd.num_vertices, rnd.num_edges, rnd.num_faces) == (8, 18, 12)

    try:
        cube.unfold_json("12345678")
    except ValueError:
        pass
    else:
        raise AssertionError("non-cycle accepted")

    print("python smoke test ok:", repr(cube))


if __name__ == "__main__":
    main()
