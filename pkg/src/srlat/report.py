from dataclasses import dataclass, field


@dataclass
class Report:
    """Outcome of a validator: an overall verdict plus named sub-checks."""

    name: str
    passed: bool = True
    checks: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    seconds: float = 0.0

    def record(self, check, ok, witness=None):
        self.checks[check] = self.checks.get(check, True) and bool(ok)
        if not ok:
            self.passed = False
            if witness is not None:
                self.witnesses.append({"check": check, "witness": witness})
        return ok

    def merge(self, other):
        for key, ok in other.checks.items():
            self.checks[f"{other.name}.{key}"] = ok
        self.witnesses.extend({"check": f"{other.name}.{w['check']}", "witness": w["witness"]}
                              for w in other.witnesses)
        self.passed = self.passed and other.passed
        return self

    def __bool__(self):
        return self.passed

    def to_json(self):
        return {"name": self.name, "passed": self.passed, "checks": dict(self.checks),
                "witnesses": [_jsonable(w) for w in self.witnesses],
                "seconds": round(self.seconds, 3)}

    def lines(self):
        out = [f"{'PASS' if self.passed else 'FAIL'} {self.name}"]
        for key, ok in self.checks.items():
            out.append(f"  {'ok  ' if ok else 'FAIL'} {key}")
        for w in self.witnesses[:20]:
            out.append(f"  witness {w['check']}: {_jsonable(w['witness'])}")
        return out


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in obj]
        return sorted(items, key=str) if isinstance(obj, (set, frozenset)) else items
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    return str(obj)
