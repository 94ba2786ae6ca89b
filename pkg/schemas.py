from pydantic import BaseModel, Field, model_validator
from typing import List, Optional, Literal, Union

from braid_core import parse_word
from config import (
    DEFAULT_N, DEFAULT_SEED, DEFAULT_JOBS, PINGPONG_SAMPLES, SUBCOMMANDS
)


class TermModel(BaseModel):
    coeff: str = Field(..., description="Integer coefficient as a decimal string (arbitrary precision)")
    exps: List[int] = Field(..., description="Exponent vector, one entry per variable")


class PolyModel(BaseModel):
    nvars: int = Field(..., ge=1)
    terms: List[TermModel] = []  # Sorted lexicographically by exponent vector


class MatrixModel(BaseModel):
    n: int = Field(..., ge=1)
    rows: List[List[PolyModel]]  # Row-major


class CBElementModel(BaseModel):
    matrix: MatrixModel
    perm: List[int]  # Images of 1..n


class IntMatrixModel(BaseModel):
    n: int = Field(..., ge=1)
    rows: List[List[Union[int, str]]]  # Non-integral entries appear as "p/q"


class BlocksModel(BaseModel):
    j: List[List[int]]
    jprime: List[List[int]]


class FreePairCertificate(BaseModel):
    n: int
    j: int
    jprime: int
    P: Optional[IntMatrixModel] = None  # Change of basis, columns are the new basis vectors
    block_row: Optional[int] = None
    blocks: Optional[BlocksModel] = None
    blocks_ok: bool = False
    zero_pattern_ok: bool = False
    basis_rule: Optional[str] = None
    search_depth: int
    relation: Optional[str] = None  # Shortest relation found, or None
    search_only: bool = False
    evidence: str = ""

    def is_valid(self) -> bool:
        if self.relation is not None:
            return False
        return self.search_only or (self.blocks_ok and self.zero_pattern_ok)


class KernelSearchResult(BaseModel):
    n: int
    search_depth: int
    generators: List[str]
    relation: Optional[str] = None
    note: str = "Bounded search only: an empty result does not decide faithfulness."


class CommandConfig(BaseModel):
    command: Literal[tuple(SUBCOMMANDS)]
    n: int = DEFAULT_N
    word: Optional[str] = None
    i: Optional[int] = None
    j: Optional[int] = None
    jprime: Optional[int] = None
    depth: Optional[int] = Field(None, ge=0)
    format: Literal["json", "text"] = "text"
    seed: int = DEFAULT_SEED
    jobs: int = Field(DEFAULT_JOBS, ge=1)
    check: bool = False
    power: int = 1
    samples: int = Field(PINGPONG_SAMPLES, ge=1)
    quick: bool = False

    @model_validator(mode="after")
    def check_command_args(self):
        if self.n < 2:
            raise ValueError(f"--n must be at least 2, got {self.n}")
        command = self.command

        if command == "eval":
            if self.word is None:
                raise ValueError("eval needs --word")
            parse_word(self.word, self.n)
        elif command == "puregen":
            if self.i is None or self.j is None:
                raise ValueError("puregen needs --i and --j")
            if not 1 <= self.i < self.j <= self.n:
                raise ValueError(f"puregen needs 1 <= i < j <= n, got i={self.i}, j={self.j}, n={self.n}")
        elif command == "eigen":
            if self.j is not None and not 2 <= self.j <= self.n:
                raise ValueError(f"eigen needs 2 <= j <= n, got j={self.j}, n={self.n}")
        elif command == "free-pair":
            if self.n < 4:
                raise ValueError(f"free-pair needs n >= 4, got {self.n}")
            if self.j is None or self.jprime is None:
                raise ValueError("free-pair needs --j and --jprime")
            if not 2 <= self.j < self.jprime <= self.n:
                raise ValueError(f"free-pair needs 2 <= j < jprime <= n, got j={self.j}, jprime={self.jprime}")
        elif command == "kernel-search":
            if self.n < 3:
                raise ValueError(f"kernel-search needs n >= 3, got {self.n}")
        elif command == "center-det":
            if self.power == 0:
                raise ValueError("center-det needs a nonzero --power")
        return self

    def search_depth(self) -> int:
        if self.depth is not None:
            return self.depth
        return SUBCOMMANDS[self.command] or 0
