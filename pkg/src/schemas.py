"""Pydantic models for the JSON files the toolkit reads and writes.

Cayley tables, operator matrices and family records are validated here
before any algebra touches them.
"""

from pydantic import BaseModel, Field, field_validator, model_validator


class TableFile(BaseModel):
    """{"n": 3, "table": [[1,1,1],[1,2,1],[1,3,1]]}, 1-based, row = left factor."""

    n: int = Field(ge=1, description="Semigroup order")
    table: list[list[int]] = Field(description="n x n entries in 1..n")

    @model_validator(mode="after")
    def _square(self) -> "TableFile":
        if len(self.table) != self.n or any(len(row) != self.n for row in self.table):
            raise ValueError(f"table must be {self.n}x{self.n}")
        return self


class MatrixFile(BaseModel):
    """{"n": 2, "c": [["1","-1"],["2","-2"]]}; row i holds the coordinates of P(e_i)."""

    n: int = Field(ge=1, description="Operator order")
    c: list[list[int | str]] = Field(description="Rational entries as ints or 'num/den' strings")

    @model_validator(mode="after")
    def _square(self) -> "MatrixFile":
        if len(self.c) != self.n or any(len(row) != self.n for row in self.c):
            raise ValueError(f"matrix must be {self.n}x{self.n}")
        return self


class RelationRecord(BaseModel):
    """aux^2 = radicand."""

    aux: str = Field(min_length=1)
    radicand: str = Field(min_length=1)


class FamilyRecord(BaseModel):
    id: str = Field(min_length=1, description="Family id, e.g. 'N_{5,1}'")
    semigroup: str = Field(min_length=1, description="Catalog id of the semigroup")
    params: list[str] | None = Field(default=None, description="Free parameters; inferred from entries when omitted")
    entries: list[list[str]] = Field(description="Matrix of rational-function strings")
    relations: list[RelationRecord] = Field(default_factory=list)
    nonvanishing: list[str] = Field(default_factory=list)
    paper_row: str = Field(default="", description="Citation of the classification row")
    constraint_source: str = Field(default="", description="Derivation step the constraints come from")
    notes: str = Field(default="", description="Discrepancies between table annotation and derivation")
    erratum: bool = Field(default=False, description="Printed row that fails the identity; never part of the family union")

    @field_validator("entries")
    @classmethod
    def _square(cls, entries: list[list[str]]) -> list[list[str]]:
        n = len(entries)
        if n == 0 or any(len(row) != n for row in entries):
            raise ValueError("entries must form a nonempty square matrix")
        return entries


class FamilyFile(BaseModel):
    families: list[FamilyRecord]
