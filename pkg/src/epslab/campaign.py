"""Verification campaigns: TOML case lists in, deterministic JSON reports out."""
from __future__ import annotations

import hashlib
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Callable, Mapping

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import __version__, verify
from .errors import ConfigError, EpslabError
from .localdata import TameExtensionDescriptor, UnramifiedCharacterData
from .padic import DEFAULT_PRECISION

EXIT_OK, EXIT_ERROR, EXIT_FAILED = 0, 1, 2


def _lemma80(p, u, precision=None, eK=1, fK=1, e=1, f=1, c=0, disc_exponent=None, **_):
    d = TameExtensionDescriptor(p, eK, fK, e, f, c, disc_exponent)
    return verify.run_lemma80(d, UnramifiedCharacterData(p, Fraction(str(u)), precision or DEFAULT_PRECISION))


def _snf(p, u, f, fK=1, precision=None, **_):
    return verify.run_snf(p, Fraction(str(u)), f, fK, precision or DEFAULT_PRECISION)


def _nr(e, f, q=1, c=0, trials=100, seed=42, **_):
    return verify.run_nr_diagram(e, f, q, c, trials, seed)


def _le81(fK, p=5, u=2, f=2, precision=None, **_):
    return verify.run_le81_determinant(fK, p, Fraction(str(u)), f, precision or DEFAULT_PRECISION)


def _conductor(p, eK=1, fK=1, e=1, f=1, c=0, disc_exponent=None, **_):
    params = {"p": p, "eK": eK, "fK": fK, "e": e, "f": f, "c": c, "disc_exponent": disc_exponent}
    return verify.run_conductor_induction(params)


def _gamma(hodge=None, **_):
    return verify.run_gamma(hodge or {})


def _lfun(max_modulus=20, s=("0.3", "0.5", "0.5+0.5i", "1.2"), tol=1e-8, bits=128, moduli=None, **_):
    return verify.run_lfun_fe(max_modulus, tuple(str(x) for x in s), tol, bits, moduli)


@dataclass(frozen=True)
class Kind:
    runner: Callable[..., dict]
    required: tuple[str, ...]
    optional: tuple[str, ...] = ()


KINDS: dict[str, Kind] = {
    "lemma80": Kind(_lemma80, ("p", "u"), ("eK", "fK", "e", "f", "c", "disc_exponent", "precision")),
    "snf": Kind(_snf, ("p", "u", "f"), ("fK", "precision")),
    "nr-diagram": Kind(_nr, ("e", "f"), ("q", "c", "trials", "seed")),
    "taylor-unit": Kind(lambda p, e, **_: verify.run_taylor_unit(p, e), ("p", "e")),
    "hasse-davenport": Kind(lambda q, f, **_: verify.run_hasse_davenport(q, f), ("q", "f")),
    "conductor-induction": Kind(_conductor, ("p",), ("eK", "fK", "e", "f", "c", "disc_exponent")),
    "gamma": Kind(_gamma, (), ("hodge",)),
    "lfun-fe": Kind(_lfun, (), ("max_modulus", "s", "tol", "bits", "moduli")),
    "class-number": Kind(lambda bits=128, **_: verify.run_class_number(bits), (), ("bits",)),
    "le81": Kind(_le81, ("fK",), ("p", "u", "f", "precision")),
    "gauss-sum": Kind(lambda q, **_: verify.run_gauss_sum(q), ("q",)),
    "epsilon-anchor": Kind(lambda p, eK=1, fK=1, **_: verify.run_epsilon_anchor(p, eK, fK), ("p",), ("eK", "fK")),
}

_META = ("kind", "name")


@dataclass(frozen=True)
class Case:
    kind: str
    params: dict
    name: str = ""


@dataclass(frozen=True)
class CaseConfig:
    cases: tuple[Case, ...]
    digest: str
    seed: int = 42


def parse_config(data: Mapping[str, Any], raw: bytes = b"") -> CaseConfig:
    cases = []
    seed = int(data.get("seed", 42))
    for i, entry in enumerate(data.get("case", [])):
        if not isinstance(entry, Mapping) or "kind" not in entry:
            raise ConfigError(f"case {i}: missing 'kind'")
        kind = entry["kind"]
        if kind not in KINDS:
            raise ConfigError(f"case {i}: unknown kind {kind!r}")
        spec = KINDS[kind]
        params = {k: v for k, v in entry.items() if k not in _META}
        missing = [k for k in spec.required if k not in params]
        if missing:
            raise ConfigError(f"case {i} ({kind}): missing {', '.join(missing)}")
        extra = [k for k in params if k not in spec.required + spec.optional]
        if extra:
            raise ConfigError(f"case {i} ({kind}): unknown parameters {', '.join(sorted(extra))}")
        cases.append(Case(kind, params, str(entry.get("name", ""))))
    unknown = set(data) - {"case", "seed"}
    if unknown:
        raise ConfigError(f"unknown top-level keys: {', '.join(sorted(unknown))}")
    digest = hashlib.sha256(raw or json.dumps(data, sort_keys=True, default=str).encode()).hexdigest()
    return CaseConfig(tuple(cases), digest, seed)


def load_config(path: str | Path | None) -> CaseConfig:
    if path is None:
        raw = resources.files("epslab").joinpath("data/default.toml").read_bytes()
    else:
        raw = Path(path).read_bytes()
    try:
        data = tomllib.loads(raw.decode())
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"invalid TOML: {exc}") from exc
    return parse_config(data, raw)


def run_case(case: Case, seed: int = 42) -> dict:
    params = dict(case.params)
    if case.kind == "nr-diagram":
        params.setdefault("seed", seed)
    start = time.perf_counter()
    try:
        out = KINDS[case.kind].runner(**params)
        status = "pass" if out.get("pass") else "fail"
        record = {"kind": case.kind, "name": case.name, "status": status, "result": verify.jsonable(out)}
    except (EpslabError, ArithmeticError, ValueError, NotImplementedError) as exc:
        record = {"kind": case.kind, "name": case.name, "status": "error", "error": f"{type(exc).__name__}: {exc}"}
    record["wall_time"] = time.perf_counter() - start
    return record


def _run_indexed(args: tuple[Case, int]) -> dict:
    return run_case(*args)


@dataclass
class VerificationReport:
    version: str
    config_digest: str
    seed: int
    cases: list[dict] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        statuses = {c["status"] for c in self.cases}
        if "error" in statuses:
            return EXIT_ERROR
        if "fail" in statuses:
            return EXIT_FAILED
        return EXIT_OK

    def to_json(self, timings: bool = False) -> dict:
        cases = []
        for i, c in enumerate(self.cases):
            c = dict(c, index=i)
            if not timings:
                c.pop("wall_time", None)
            cases.append(c)
        return {
            "tool": "epslab",
            "version": self.version,
            "config_digest": self.config_digest,
            "seed": self.seed,
            "pass": self.exit_code == EXIT_OK,
            "exit_code": self.exit_code,
            "cases": cases,
        }

    def dumps(self, timings: bool = False) -> str:
        return json.dumps(self.to_json(timings), indent=2, sort_keys=True) + "\n"


def run_campaign(config: CaseConfig, jobs: int = 1, seed: int | None = None) -> VerificationReport:
    seed = config.seed if seed is None else seed
    work = [(case, seed) for case in config.cases]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_indexed, work))
    else:
        results = [_run_indexed(w) for w in work]
    return VerificationReport(__version__, config.digest, seed, results)
