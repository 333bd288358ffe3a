"""Pydantic models for everything that crosses the command line or the cache file."""
from typing import Literal
from typing import Optional

from pydantic import BaseModel
from pydantic import ValidationError
from pydantic import computed_field
from pydantic import field_validator
from pydantic import model_validator

from weightsys.core.config import CACHE_FORMAT
from weightsys.core.exceptions import CacheError
from weightsys.core.exceptions import PermutationError
from weightsys.diagrams.perm import Partition
from weightsys.diagrams.perm import Permutation
from weightsys.diagrams.perm import canonical_cyclic_class
from weightsys.diagrams.perm import format_cycles
from weightsys.diagrams.perm import format_one_line
from weightsys.diagrams.perm import from_one_line
from weightsys.diagrams.perm import parse_permutation

Engine = Literal['gl', 'so']


class PermutationModel(BaseModel):
    map: list[int]

    @model_validator(mode='before')
    def parse_text(cls, data):
        if isinstance(data, str):
            return {'map': list(parse_permutation(data).map)}
        return data

    @field_validator('map')
    def bijection(cls, v):
        from_one_line(v)
        return v

    @computed_field
    def m(self) -> int:
        return len(self.map)

    @computed_field
    def cycles(self) -> str:
        return format_cycles(self.to_permutation())

    def to_permutation(self) -> Permutation:
        return Permutation(tuple(self.map))

    @classmethod
    def from_text(cls, text: str) -> 'PermutationModel':
        try:
            return cls.model_validate(text)
        except ValidationError as e:
            raise PermutationError(f'Invalid permutation "{text}": {e.errors()[0]["msg"]}') from e


class PartitionModel(BaseModel):
    parts: list[int]

    @model_validator(mode='before')
    def parse_text(cls, data):
        if isinstance(data, str):
            return {'parts': list(Partition.parse(data).parts)}
        return data

    @field_validator('parts')
    def descending_positive(cls, v):
        return list(Partition.of(v).parts)

    @computed_field
    def weight(self) -> int:
        return sum(self.parts)

    @computed_field
    def notation(self) -> str:
        return str(self.to_partition())

    def to_partition(self) -> Partition:
        return Partition(tuple(self.parts))


class CacheRecord(BaseModel):
    format: str = CACHE_FORMAT
    key: str
    engine: Engine
    value: str
    version: str

    @model_validator(mode='before')
    def canonical_key(cls, data):
        if not isinstance(data, dict):
            return data
        key = data.get('key')
        if isinstance(key, str) and key.startswith(('[', '(')):
            try:
                data['key'] = format_one_line(
                    canonical_cyclic_class(parse_permutation(key)).canonical
                )
            except PermutationError as e:
                raise ValueError(f'Malformed cache key "{key}"') from e
        return data

    @field_validator('format')
    def known_format(cls, v):
        if v != CACHE_FORMAT:
            raise ValueError(f'Unknown cache format "{v}"')
        return v

    @classmethod
    def from_json_dict(cls, data: dict) -> 'CacheRecord':
        try:
            return cls.model_validate(data)
        except ValidationError as e:
            raise CacheError(f'Corrupt cache record {data!r}') from e


class DimRow(BaseModel):
    label: str
    m: int
    dim: int
    primitive: Optional[int] = None
    dim_positive: Optional[int] = None
    primitive_positive: Optional[int] = None


class CheckReport(BaseModel):
    name: str
    checked: int = 0
    violations: list[str] = []

    @computed_field
    def passed(self) -> bool:
        return not self.violations


class FitReport(BaseModel):
    exponent: str
    convention: Literal['ordinary', 'exponential']
    alternating: bool
    matched: bool
    coefficients: dict[str, str]
    reference_deviations: dict[str, str] = {}


class EvalResult(BaseModel):
    permutation: str
    engine: Engine
    basis: str
    value: str
    terms: list[dict]
