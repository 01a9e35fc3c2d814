from pyamalgam.misc import (
    CappedResult,
    check_integrality_and_range,
    compose_maps,
    doc_category,
    generate_category_tables,
    invert_map,
    is_identity,
    map_to_pairs,
    pairs_to_map,
    restrict_map,
)

import pytest


def test_compose_maps():
    assert compose_maps({0: 1, 1: 2}, {5: 0, 6: 1, 7: 9}) == {5: 1, 6: 2}
    assert compose_maps({0: 1}) == {0: 1}
    rotation = {0: 1, 1: 2, 2: 0}
    assert compose_maps(rotation, rotation, rotation) == {0: 0, 1: 1, 2: 2}


def test_invert_map():
    assert invert_map({0: 2, 1: 0, 2: 1}) == {2: 0, 0: 1, 1: 2}
    with pytest.raises(ValueError):
        invert_map({0: 1, 2: 1})


def test_restrict_map():
    assert restrict_map({0: 1, 1: 2, 2: 0}, [2, 0]) == {2: 0, 0: 1}
    with pytest.raises(ValueError):
        restrict_map({0: 1}, [0, 1])


def test_is_identity():
    assert is_identity({})
    assert is_identity({3: 3, 4: 4})
    assert not is_identity({3: 4, 4: 3})


def test_map_pairs():
    assert map_to_pairs({2: 0, 0: 1}) == [[0, 1], [2, 0]]
    assert pairs_to_map([[0, 1], [2, 0]]) == {0: 1, 2: 0}


@pytest.mark.parametrize("n", [0, 1, 5, 1000])
def test_check_integrality_and_range(n):
    check_integrality_and_range(n)


@pytest.mark.parametrize(
    "n, min_n, max_n, error",
    [
        (-1, 0, 10, ValueError),
        (11, 0, 10, ValueError),
        (0, 1, 10, ValueError),
        (2.0, 0, 10, TypeError),
        ("2", 0, 10, TypeError),
        (True, 0, 10, TypeError),
    ],
)
def test_check_integrality_and_range_error(n, min_n, max_n, error):
    with pytest.raises(error):
        check_integrality_and_range(n, "radius R", min_n, max_n)


def test_capped_result():
    result = CappedResult([3, 1], truncated=True)
    assert len(result) == 2
    assert list(result) == [3, 1]
    assert result[1] == 1
    assert result.truncated
    assert not CappedResult().truncated



def test_generate_category_tables():
    class Example:
        @doc_category("Second")
        def b(self):
            pass

        @doc_category("First")
        def a(self):
            pass

        def hidden(self):
            pass

    table = generate_category_tables(Example, 1, ["First", "Empty", "Second"])
    lines = table.splitlines()
    assert lines[:2] == ["Methods", "    -------"]
    assert [line for line in lines if line.startswith("    **")] == [
        "    **First**",
        "    **Second**",
    ]
    assert "hidden" not in table
