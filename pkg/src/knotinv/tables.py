"""Integer coefficient tables produced by the series and residue pipelines."""

from __future__ import annotations

from dataclasses import dataclass, field

__all__ = ["CoefficientTable"]


@dataclass(frozen=True)
class CoefficientTable:
    """A map from index tuples to integers with its truncation metadata.

    kind  'b'  : (n, m) -> coefficient of x^n y^m, n + m <= order
    kind  'c'  : (n, m) -> product-series coefficient, n + m <= order, with r
    kind  'd'  : (n, m) -> root-of-unity basis coefficient, n < phi(r), m <= order
    kind  'cl' : (j, i, m) -> residue digit, j <= levels, i < phi(r), m <= order
    """

    kind: str
    entries: dict
    order: int
    r: int = 0
    levels: int = 0
    phi: int = 0
    _frozen: tuple = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in ("b", "c", "d", "cl"):
            raise ValueError(f"unknown table kind {self.kind!r}")
        entries = {tuple(k): int(v) for k, v in dict(self.entries).items() if v != 0}
        object.__setattr__(self, "entries", entries)
        if self.kind == "d" and self.phi:
            for key in entries:
                if not 0 <= key[0] < self.phi:
                    raise ValueError(f"d-table row {key[0]} outside basis range")

    def value(self, *key) -> int:
        return self.entries.get(tuple(key), 0)

    def items(self):
        return self.entries.items()

    def __len__(self):
        return len(self.entries)

    def to_json_dict(self) -> dict:
        data = {
            "kind": self.kind,
            "D": self.order,
            "coeffs": [list(k) + [str(v)] for k, v in sorted(self.entries.items())],
        }
        if self.r:
            data["r"] = self.r
        if self.levels:
            data["levels"] = self.levels
        if self.phi:
            data["phi"] = self.phi
        return data

    @classmethod
    def from_json_dict(cls, data: dict) -> "CoefficientTable":
        entries = {tuple(row[:-1]): int(row[-1]) for row in data["coeffs"]}
        return cls(
            kind=data["kind"],
            entries=entries,
            order=int(data["D"]),
            r=int(data.get("r", 0)),
            levels=int(data.get("levels", 0)),
            phi=int(data.get("phi", 0)),
        )

    def to_csv_rows(self):
        """Flat projection: one row per entry, index columns then the value."""
        for key, value in sorted(self.entries.items()):
            yield list(key) + [value]
