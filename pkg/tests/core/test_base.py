import pytest
from pydantic import ValidationError

from truncbt.core.base import (
    BaseRecipe,
    BlocksBase,
    KraftBase,
    MinimalBase,
    OrdinaryBase,
    build_model,
    build_recipe,
    parse_string_conf,
    smart_split,
)
from truncbt.core.errors import InvalidArgumentError
from truncbt.core.kraft import minimal_datum
from truncbt.core.matrix import MatrixW
from truncbt.core.newton import NewtonPolygon
from truncbt.core.witt import RingDescriptor


def test_build_recipe():
    recipe = build_recipe("minimal", c=2, d=3)
    assert recipe == MinimalBase(c=2, d=3)
    assert recipe.datum() == minimal_datum(2, 3)
    assert recipe.describe() == {"type": "minimal", "c": 2, "d": 3}


def test_build_recipe_ignores_foreign_kwargs():
    recipe = build_recipe("kraft", ["pi=2,1"], c=1, d=7)
    assert isinstance(recipe, KraftBase)
    assert recipe.datum() == minimal_datum(1, 1)


def test_build_recipe_blocks():
    recipe = build_recipe("blocks", ["blocks=2/1,1/1"])
    assert isinstance(recipe, BlocksBase)
    assert recipe.newton_polygon() == NewtonPolygon.parse_blocks("2/1,1/1")
    assert recipe.datum().r == 5


def test_build_model_from_file(tmp_path):
    path = tmp_path / "blocks.yaml"
    path.write_text("- [1, 1]\n- [1, 0]\n")
    recipe = build_model(BlocksBase, file_conf=[f"blocks={path}"])
    assert recipe.blocks == ((1, 1), (1, 0))


def test_unknown_base():
    with pytest.raises(InvalidArgumentError):
        build_recipe("nonexistent", c=1, d=1)
    with pytest.raises(InvalidArgumentError):
        BaseRecipe.load_type("nonexistent")


def test_recipe_validation():
    with pytest.raises(ValidationError):
        build_recipe("ordinary", c="x", d=1)
    with pytest.raises(ValidationError):
        KraftBase(c=1, pi="1,1").datum()


def test_smart_split():
    assert smart_split("a 'b c' d", " ") == ["a", "b c", "d"]
    assert smart_split('a."b.c".d', ".") == ["a", "b.c", "d"]
    assert smart_split("blocks=2/1,1/1", "=", maxsplit=1) == ["blocks", "2/1,1/1"]


def test_parse_string_conf():
    assert parse_string_conf(["c=1", "pi=2,1", "a.b=3"]) == {
        "c": "1",
        "pi": "2,1",
        "a": {"b": "3"},
    }


def test_recipe_newton_polygon(supersingular, ordinary):
    assert supersingular.newton_polygon().blocks == ((1, 1),)
    assert ordinary.newton_polygon().blocks == ((1, 0), (0, 1))


def test_recipe_context_and_truncation(supersingular):
    ring = RingDescriptor(p=3)
    ctx = supersingular.context(ring)
    assert (ctx.c, ctx.d) == (1, 1)
    assert ctx.S == supersingular.base_matrix(ring)
    D = supersingular.truncation(ring)
    assert D == ctx.truncation(MatrixW.identity(ring, 2))
    D.verify()


def test_symplectic_base_matrix(supersingular):
    ring = RingDescriptor(p=3)
    assert supersingular.base_matrix(ring, symplectic=True).entries == (
        ((0,), (2,)),
        ((1,), (0,)),
    )
    assert OrdinaryBase(c=1, d=1).base_matrix(ring).entries == (
        ((1,), (0,)),
        ((0,), (1,)),
    )
