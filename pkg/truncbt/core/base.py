"""
Base recipes: named ways to pick the matrix S of sigma_phi, plus the
`key=value` configuration helpers the CLI uses to build them.
"""
import shlex
from abc import ABC, abstractmethod
from typing import Any, ClassVar, Dict, List, Optional, Tuple, Type

from pydantic import BaseModel, parse_obj_as, validator
from yaml import safe_load

from truncbt.constants import BASE_BLOCKS, BASE_KRAFT, BASE_MINIMAL, BASE_ORDINARY
from truncbt.core.dieudonne import DieudonneTruncation, make_truncation
from truncbt.core.errors import InvalidArgumentError
from truncbt.core.kraft import (
    KraftDatum,
    identity_datum,
    minimal_datum,
    permutation_matrix,
    sum_of_minimal,
)
from truncbt.core.matrix import MatrixW
from truncbt.core.newton import NewtonPolygon, np_from_datum
from truncbt.core.orbit import ActionContext, make_context
from truncbt.core.witt import RingDescriptor


class BaseRecipe(BaseModel, ABC):
    """A Kraft datum whose permutation matrix serves as S"""

    __type_map__: ClassVar[Dict[str, Type["BaseRecipe"]]] = {}
    type: ClassVar[str]

    class Config:
        frozen = True

    def __init_subclass__(cls, **kwargs):
        super().__init_subclass__(**kwargs)
        if "type" in cls.__dict__:
            BaseRecipe.__type_map__[cls.type] = cls

    @classmethod
    def load_type(cls, type_name: str) -> Type["BaseRecipe"]:
        try:
            return cls.__type_map__[type_name]
        except KeyError as e:
            raise InvalidArgumentError(
                f"Unknown base '{type_name}', known: {sorted(cls.__type_map__)}"
            ) from e

    @abstractmethod
    def datum(self) -> KraftDatum:
        raise NotImplementedError

    def newton_polygon(self) -> NewtonPolygon:
        return np_from_datum(self.datum())

    def base_matrix(self, ring: RingDescriptor, symplectic: bool = False) -> MatrixW:
        return permutation_matrix(self.datum(), ring, symplectic=symplectic)

    def context(self, ring: RingDescriptor, symplectic: bool = False) -> ActionContext:
        datum = self.datum()
        return make_context(
            datum.c,
            datum.d,
            ring,
            self.base_matrix(ring, symplectic=symplectic),
            symplectic=symplectic,
        )

    def truncation(
        self,
        ring: RingDescriptor,
        g: Optional[MatrixW] = None,
        symplectic: bool = False,
    ) -> DieudonneTruncation:
        datum = self.datum()
        return make_truncation(
            datum.c, datum.d, ring, self.base_matrix(ring, symplectic), g
        )

    def describe(self) -> Dict[str, Any]:
        return {"type": self.type, **self.dict()}


class OrdinaryBase(BaseRecipe):
    """Identity permutation: c multiplicative and d etale coordinates"""

    type: ClassVar[str] = BASE_ORDINARY
    c: int
    d: int

    def datum(self) -> KraftDatum:
        return identity_datum(self.c, self.d)


class MinimalBase(BaseRecipe):
    """Minimal p-divisible group of coprime type (c, d), a single cycle"""

    type: ClassVar[str] = BASE_MINIMAL
    c: int
    d: int

    def datum(self) -> KraftDatum:
        return minimal_datum(self.c, self.d)


class BlocksBase(BaseRecipe):
    """Direct sum of minimal data, one per Newton block"""

    type: ClassVar[str] = BASE_BLOCKS
    blocks: Tuple[Tuple[int, int], ...]

    @validator("blocks", pre=True)
    def parse_blocks(cls, value):  # pylint: disable=no-self-argument
        if isinstance(value, str):
            return NewtonPolygon.parse_blocks(value).blocks
        return value

    def datum(self) -> KraftDatum:
        return sum_of_minimal(list(self.blocks))

    def newton_polygon(self) -> NewtonPolygon:
        return NewtonPolygon(blocks=self.blocks)


class KraftBase(BaseRecipe):
    type: ClassVar[str] = BASE_KRAFT
    c: int
    pi: Tuple[int, ...]

    @validator("pi", pre=True)
    def parse_pi(cls, value):  # pylint: disable=no-self-argument
        if isinstance(value, str):
            return tuple(int(v) for v in value.split(",") if v.strip())
        return value

    def datum(self) -> KraftDatum:
        return KraftDatum(r=len(self.pi), c=self.c, pi=self.pi)


def set_recursively(obj: dict, keys: List[str], value: Any):
    if len(keys) == 1:
        obj[keys[0]] = value
        return
    key, keys = keys[0], keys[1:]
    if not isinstance(obj.get(key), dict):
        obj[key] = {}
    set_recursively(obj[key], keys, value)


def smart_split(string: str, char: str, maxsplit: int = None):
    SPECIAL = "\0"
    if char != " ":
        string = string.replace(" ", SPECIAL).replace(char, " ")
    res = [
        s.replace(" ", char).replace(SPECIAL, " ")
        for s in shlex.split(string, posix=True)
    ]
    if maxsplit is None:
        return res
    return res[:maxsplit] + [char.join(res[maxsplit:])]


def parse_string_conf(conf: List[str]) -> Dict[str, Any]:
    res: Dict[str, Any] = {}
    for c in conf:
        keys, value = smart_split(c, "=", 1)
        set_recursively(res, smart_split(keys, "."), value)
    return res


def build_model(
    model: Type[BaseModel],
    str_conf: List[str] = None,
    file_conf: List[str] = None,
    **kwargs,
):
    """kwargs first, then `key=path` yaml files, then `key=value` strings"""
    model_dict: Dict[str, Any] = {}
    for key, value in kwargs.items():
        if value is not None:
            set_recursively(model_dict, smart_split(key, "."), value)
    for file in file_conf or []:
        keys, path = smart_split(file, "=", 1)
        with open(path, "r", encoding="utf8") as f:
            value = safe_load(f)
        set_recursively(model_dict, smart_split(keys, "."), value)
    for c in str_conf or []:
        keys, value = smart_split(c, "=", 1)
        if value == "None":
            value = None
        set_recursively(model_dict, smart_split(keys, "."), value)
    return parse_obj_as(model, model_dict)


def build_recipe(
    base: str, str_conf: List[str] = None, **kwargs
) -> BaseRecipe:
    """build_recipe("minimal", c=2, d=3) or build_recipe("kraft", ["c=1", "pi=2,1"])"""
    recipe_cls = BaseRecipe.load_type(base)
    fields = set(recipe_cls.__fields__)
    return build_model(
        recipe_cls,
        str_conf=str_conf,
        **{k: v for k, v in kwargs.items() if k in fields},
    )
