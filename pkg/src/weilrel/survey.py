"""Surveys over the family y^2 = f(x)(x - t) and their record files.

A survey walks t over U(F_q) = {t : f(t) != 0} (or pairs of distinct t for
k = 2), computes the L-polynomial of each curve, attempts a maximality
certificate, runs relation detection independently of the certificate, and
aggregates the counts.  The hard consistency check is that no record is at
the same time certified, free of zero traces and carrying a verified
nontrivial relation.

Config files are flat ``key = value`` lines; ``#`` starts a comment.
"""

from __future__ import annotations

import csv
import io
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

from .arith.fields import ENUMERATION_CAP
from .errors import (CapExceeded, ConfigInvalid, InvariantViolation, NotSeparable, PrecisionExhausted,
                     SharedRoots, TooLarge, WeilrelError)
from .galois.cert import PROVEN, UNDETERMINED, maximality_certificate, trace_is_zero, tuple_certificate
from .relations import (HAS_RELATIONS, UNDETERMINED as REL_UNDETERMINED, angle_vector_to_exponents, detect_additive,
                        detect_multiplicative, relation_verdicts, small_relations, _roots)
from .sieve import exponent_gamma, sieve_bound, tagged
from .weil import is_q_symplectic, rh_check
from .zeta import CurveSpec, discriminant_is_unit, lpolynomial, parameter_set

DEFAULT_WORK_BUDGET = 2000
CAVEAT = "implied constant unknown; ratio is indicative only"


class InvalidRecords(WeilrelError, ValueError):
    pass


@dataclass
class SurveyConfig:
    f: tuple[int, ...]
    p: int
    e: int = 1
    k: int = 1
    ell_budget: int = 200
    bits: int = 256
    height: int = 0
    seed: int = 0
    jobs: int = 1
    work_budget: int = DEFAULT_WORK_BUDGET
    cap: int = ENUMERATION_CAP
    timing: bool = False
    out_json: str = ""
    out_csv: str = ""

    def __post_init__(self):
        self.f = tuple(int(c) for c in self.f)
        self.validate()

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def g(self) -> int:
        return (len(self.f) - 1) // 2

    def validate(self) -> None:
        from .arith.numtheory import is_prime

        if not is_prime(self.p) or self.p == 2:
            raise ConfigInvalid("p must be an odd prime")
        if self.e < 1 or self.k not in (1, 2):
            raise ConfigInvalid("need e >= 1 and k in {1, 2}")
        if len(self.f) < 3 or (len(self.f) - 1) % 2 or self.f[-1] != 1:
            raise ConfigInvalid("f must be monic of even degree >= 2")
        if not discriminant_is_unit(self.f, self.p):
            raise ConfigInvalid("p divides the discriminant of f")
        if self.bits < 64 or self.ell_budget < 3 or self.height < 0 or self.jobs < 1:
            raise ConfigInvalid("bits >= 64, ell_budget >= 3, height >= 0 and jobs >= 1 are required")
        if self.q**self.g > self.cap:
            raise CapExceeded(f"q^g = {self.q}^{self.g} exceeds the counting cap {self.cap}")


_INT_KEYS = {"p", "e", "k", "ell_budget", "bits", "height", "seed", "jobs", "work_budget", "cap"}
_STR_KEYS = {"out_json", "out_csv"}


def parse_config(text: str) -> SurveyConfig:
    """Flat key = value text; ``f`` is a comma-separated coefficient list, low degree first."""
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigInvalid(f"line {lineno}: expected key = value")
        key, val = (s.strip() for s in line.split("=", 1))
        try:
            if key == "f":
                values["f"] = tuple(int(c) for c in val.replace(" ", "").split(",") if c)
            elif key in _INT_KEYS:
                values[key] = int(val)
            elif key == "timing":
                values[key] = val.lower() in ("1", "true", "yes", "on")
            elif key in _STR_KEYS:
                values[key] = val
            else:
                raise ConfigInvalid(f"line {lineno}: unknown key {key!r}")
        except ValueError as exc:
            raise ConfigInvalid(f"line {lineno}: bad value for {key!r}") from exc
    if "f" not in values or "p" not in values:
        raise ConfigInvalid("f and p are required")
    return SurveyConfig(**values)


def load_config(path: str | Path) -> SurveyConfig:
    return parse_config(Path(path).read_text())


@dataclass
class SurveyRecord:
    t: tuple[int, ...]
    coeffs: tuple[tuple[int, ...], ...]
    cert: str
    witnesses: list = field(default_factory=list)
    trace_zero: bool = False
    rel_verdict: str = REL_UNDETERMINED
    nontrivial_rank: int = 0
    ms_count: int = 0
    ms_cert: int = 0
    ms_rel: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def exceptional(self) -> bool:
        return self.rel_verdict == HAS_RELATIONS

    @property
    def contradicts_theorem(self) -> bool:
        return self.cert == PROVEN and not self.trace_zero and self.rel_verdict == HAS_RELATIONS


def _ms(start: float, enabled: bool) -> int:
    return int(round((time.perf_counter() - start) * 1000)) if enabled else 0


def _survey_one(config: SurveyConfig, ts: tuple[int, ...]) -> SurveyRecord:
    notes: list[str] = []
    start = time.perf_counter()
    polys = []
    for t in ts:
        P = lpolynomial(CurveSpec(config.f, t, config.p, config.e), cap=config.cap)
        if not (is_q_symplectic(P.coeffs, P.q) and rh_check(P)):
            raise InvariantViolation(f"L-polynomial for t = {t} fails the functional equation or RH")
        polys.append(P)
    ms_count = _ms(start, config.timing)

    start = time.perf_counter()
    cert, witnesses = UNDETERMINED, []
    try:
        c = (maximality_certificate(polys[0], config.ell_budget) if len(polys) == 1
             else tuple_certificate(polys, config.ell_budget))
        cert = c.verdict
        witnesses = c.to_dict()["witnesses"]
        if c.reason:
            notes.append(f"certificate: {c.reason}")
    except (NotSeparable, SharedRoots, TooLarge) as exc:
        notes.append(f"certificate: {type(exc).__name__}")
    ms_cert = _ms(start, config.timing)

    start = time.perf_counter()
    rel, rank_total = REL_UNDETERMINED, 0
    try:
        rs = _roots(polys, config.bits)
        add = detect_additive(rs, bits=config.bits)
        mul = detect_multiplicative(rs, bits=config.bits)
        rel = relation_verdicts(add, mul)[0]
        rank_total = add.nontrivial_rank + mul.nontrivial_rank
        if config.height:
            for kind, lat in (("additive", add), ("multiplicative", mul)):
                for v in small_relations(rs, kind, config.height):
                    vec = v if kind == "additive" else angle_vector_to_exponents(v, rs.size)
                    if not lat.contains(vec):
                        raise InvariantViolation(f"small {kind} relation {v} missing from the detected lattice")
    except PrecisionExhausted as exc:
        notes.append(f"relations: {exc}")
    ms_rel = _ms(start, config.timing)

    return SurveyRecord(
        t=tuple(ts),
        coeffs=tuple(P.coeffs for P in polys),
        cert=cert,
        witnesses=witnesses,
        trace_zero=trace_is_zero(polys),
        rel_verdict=rel,
        nontrivial_rank=rank_total,
        ms_count=ms_count,
        ms_cert=ms_cert,
        ms_rel=ms_rel,
        notes=notes,
    )


def survey_parameters(config: SurveyConfig) -> tuple[list[tuple[int, ...]], int | None]:
    """Parameters in order, and the sample size when k = 2 pairs were subsampled."""
    U = parameter_set(config.f, config.p, config.e)
    if config.k == 1:
        return [(t,) for t in U], None
    pairs = [(a, b) for i, a in enumerate(U) for b in U[i + 1:]]
    if len(pairs) <= config.work_budget:
        return pairs, None
    rng = random.Random(config.seed)
    chosen = sorted(rng.sample(range(len(pairs)), config.work_budget))
    return [pairs[i] for i in chosen], config.work_budget


@dataclass
class SurveyReport:
    config: SurveyConfig
    records: list[SurveyRecord]
    sampled: int | None
    aggregate: dict

    def violations(self) -> list[SurveyRecord]:
        return [r for r in self.records if r.contradicts_theorem]


def _aggregate(config: SurveyConfig, records: list[SurveyRecord], sampled: int | None) -> dict:
    method = "prop1" if config.k == 1 else "th2"
    gamma = exponent_gamma(method, config.g, config.k)
    bound = sieve_bound(config.q, config.k, gamma)
    exceptional = sum(r.exceptional for r in records)
    return {
        "q": config.q,
        "g": config.g,
        "k": config.k,
        "records": len(records),
        "sampled": sampled,
        "certified_maximal": sum(r.cert == PROVEN for r in records),
        "trace_zero": sum(r.trace_zero for r in records),
        "verified_nontrivial_relations": exceptional,
        "undetermined": sum(r.cert != PROVEN for r in records),
        "theorem_violations": sum(r.contradicts_theorem for r in records),
        "sieve": {
            "method": method,
            "gamma": gamma,
            "bound": tagged(bound),
            "ratio": exceptional / bound,
            "caveat": CAVEAT,
        },
    }


def run_survey(config: SurveyConfig) -> SurveyReport:
    config.validate()
    params, sampled = survey_parameters(config)
    if config.jobs > 1 and len(params) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            records = list(pool.map(_survey_one, [config] * len(params), params, chunksize=8))
    else:
        records = [_survey_one(config, ts) for ts in params]
    return SurveyReport(config, records, sampled, _aggregate(config, records, sampled))


# ---------------------------------------------------------------------------
# export and parse

CSV_FIXED = ["cert", "trace_zero", "rel_verdict", "nontrivial_rank", "ms_count", "ms_cert", "ms_rel"]


def _join(values) -> str:
    return ";".join(str(v) for v in values)


def records_to_csv(records: list[SurveyRecord]) -> str:
    """Columns t, c_0..c_2g, cert, ...; for pairs, cells hold ';'-joined values per factor."""
    if not records:
        raise InvalidRecords("no records to export")
    ncoef = len(records[0].coeffs[0])
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t"] + [f"c_{i}" for i in range(ncoef)] + CSV_FIXED)
    for r in records:
        w.writerow([_join(r.t)] + [_join(P[i] for P in r.coeffs) for i in range(ncoef)]
                   + [r.cert, int(r.trace_zero), r.rel_verdict, r.nontrivial_rank, r.ms_count, r.ms_cert, r.ms_rel])
    return buf.getvalue()


def records_from_csv(text: str) -> list[SurveyRecord]:
    rows = list(csv.reader(io.StringIO(text)))
    header, body = rows[0], rows[1:]
    ncoef = sum(h.startswith("c_") for h in header)
    out = []
    for row in body:
        t = tuple(int(x) for x in row[0].split(";"))
        cols = [[int(x) for x in row[1 + i].split(";")] for i in range(ncoef)]
        coeffs = tuple(tuple(col[j] for col in cols) for j in range(len(t)))
        rest = row[1 + ncoef:]
        out.append(SurveyRecord(t, coeffs, rest[0], [], bool(int(rest[1])), rest[2], int(rest[3]),
                                int(rest[4]), int(rest[5]), int(rest[6])))
    return out


def csv_projection(r: SurveyRecord) -> tuple:
    """The fields a CSV export keeps."""
    return (r.t, r.coeffs, r.cert, r.trace_zero, r.rel_verdict, r.nontrivial_rank, r.ms_count, r.ms_cert, r.ms_rel)


def _record_dict(r: SurveyRecord) -> dict:
    d = asdict(r)
    d["t"] = list(r.t)
    d["coeffs"] = [list(c) for c in r.coeffs]
    return d


def records_to_json(records: list[SurveyRecord], aggregate: dict | None = None) -> str:
    if not records:
        raise InvalidRecords("no records to export")
    payload = {"records": [_record_dict(r) for r in records]}
    if aggregate is not None:
        payload["aggregate"] = aggregate
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def records_from_json(text: str) -> list[SurveyRecord]:
    out = []
    names = {f.name for f in fields(SurveyRecord)}
    for d in json.loads(text)["records"]:
        d = {k: v for k, v in d.items() if k in names}
        d["t"] = tuple(d["t"])
        d["coeffs"] = tuple(tuple(c) for c in d["coeffs"])
        out.append(SurveyRecord(**d))
    return out


def export(records: list[SurveyRecord], fmt: str, path: str | Path | None = None,
           aggregate: dict | None = None) -> str:
    """Serialize records as json or csv, writing to ``path`` when given."""
    if fmt == "json":
        text = records_to_json(records, aggregate)
    elif fmt == "csv":
        text = records_to_csv(records)
    else:
        raise ConfigInvalid(f"unknown format {fmt!r}")
    if path is not None:
        Path(path).write_text(text)
    return text


def parse_records(text: str, fmt: str) -> list[SurveyRecord]:
    if fmt == "json":
        return records_from_json(text)
    if fmt == "csv":
        return records_from_csv(text)
    raise ConfigInvalid(f"unknown format {fmt!r}")
