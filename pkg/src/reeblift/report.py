"""PASS/FAIL assertion reports produced by the verification routines."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    title: str
    items: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def check(self, name: str, ok, witness=None) -> bool:
        ok = bool(ok)
        self.items.append((name, ok, None if ok else witness))
        return ok

    def extend(self, other: "Report", tagged: bool = False) -> "Report":
        """Append another report's items, prefixed by its title when ``tagged``."""
        prefix = f"{other.title}: " if tagged else ""
        self.items.extend((prefix + name, ok, w) for name, ok, w in other.items)
        self.data.update(other.data)
        return self

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.items)

    def __bool__(self):
        return self.ok

    def failures(self) -> list:
        return [(name, w) for name, ok, w in self.items if not ok]

    def lines(self) -> list[str]:
        out = []
        for name, ok, witness in self.items:
            if ok:
                out.append(f"PASS {name}")
            else:
                out.append(f"FAIL {name}" + ("" if witness is None else f" {witness}"))
        return out

    def __str__(self):
        return "\n".join(self.lines())
