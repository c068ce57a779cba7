"""Pass/fail audit reports shared by the table checks."""
from dataclasses import asdict, dataclass, field
from fnmatch import fnmatchcase
from typing import Any, Iterable, List, Optional


@dataclass
class Entry:
    id: str
    passed: bool
    expected: Any = None
    computed: Any = None
    detail: str = ""
    documented: bool = False


@dataclass
class DiscrepancyReport:
    title: str
    entries: List[Entry] = field(default_factory=list)

    def add(self, id, passed, expected=None, computed=None, detail=""):
        self.entries.append(Entry(id, bool(passed), expected, computed, detail))

    @property
    def mismatches(self) -> List[Entry]:
        return [e for e in self.entries if not e.passed]

    @property
    def failures(self) -> List[Entry]:
        """Mismatches that are not listed as known errors in the published values."""
        return [e for e in self.entries if not e.passed and not e.documented]

    @property
    def passed(self) -> bool:
        return not self.failures

    def mark_documented(self, patterns: Iterable[str]) -> "DiscrepancyReport":
        """Flag mismatches whose id matches any of ``patterns`` (shell-style globs)."""
        patterns = list(patterns)
        for e in self.entries:
            if not e.passed and any(fnmatchcase(e.id, p) for p in patterns):
                e.documented = True
        return self

    def __getitem__(self, id: str) -> Entry:
        for e in self.entries:
            if e.id == id:
                return e
        raise KeyError(id)

    def find(self, id: str) -> Optional[Entry]:
        try:
            return self[id]
        except KeyError:
            return None

    def to_dict(self):
        return {"title": self.title, "passed": self.passed,
                "entries": [asdict(e) for e in self.entries]}
