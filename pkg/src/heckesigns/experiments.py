"""Reproducible experiment configs and the bundled experiment runners.

A config is a small JSON document; the same config always reproduces the
same output bytes apart from the timestamp line.  Three experiment kinds are
bundled:

    hsum            sieve-weight partial sums against their predicted main
                    term, over a grid of scales y (taken from x_grid) and
                    exponents u (from u_grid)
    signs           sign statistics of a coefficient system at each x in
                    x_grid
    first-negative  the first norm at which a coefficient system goes
                    negative, reported per checkpoint x in x_grid

Coefficients come either from the deterministic semicircle sampler
("sato-tate", driven by the seed) or from a coefficient CSV file
({"file": "path"}).  Grid points are independent, so they may be evaluated
on a thread pool; results are assembled in grid order and do not depend on
the schedule.
"""

from __future__ import annotations

import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone

from .coefficients import load_csv, sample_sato_tate
from .errors import ConfigError, NonFundamentalDiscriminant
from .field import make_field
from .sieve import h_partial_sum, h_sum_prediction
from .sums import first_negative, sign_counts

__all__ = ["ExperimentConfig", "config_from_json", "run_experiment"]

_KINDS = ("hsum", "signs", "first-negative")


# ===== output helpers =====


def _fmt(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return f"{v:.12g}"
    return "" if v is None else str(v)


def _timestamp() -> str:
    return datetime.now(timezone.utc).isoformat()


def emit_csv(comments: list[str], header: list[str], rows: list[list],
             out_path: str | None) -> None:
    buf = io.StringIO()
    for c in comments:
        buf.write(f"# {c}\n")
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    _write_text(buf.getvalue(), out_path)


def emit_json(payload: dict, out_path: str | None) -> None:
    _write_text(json.dumps(payload, indent=2) + "\n", out_path)


def _write_text(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", newline="") as fh:
            fh.write(text)


# ===== config =====


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    disc: int
    x_grid: tuple[float, ...]
    u_grid: tuple[float, ...] = (10.0 / 9.0,)
    y: float | None = None
    seed: int = 42
    coeff_source: str = "sato-tate"  # or "file:<path>"
    output: str | None = None
    format: str = "csv"

    def validate(self) -> None:
        if self.kind not in _KINDS:
            raise ConfigError(f"unknown experiment kind {self.kind!r}")
        try:
            make_field(self.disc)
        except NonFundamentalDiscriminant as exc:
            raise ConfigError(str(exc)) from None
        if not self.x_grid:
            raise ConfigError("x_grid must be non-empty")
        if any(b <= a for a, b in zip(self.x_grid, self.x_grid[1:])):
            raise ConfigError("x_grid must be strictly increasing")
        if any(x < 1 for x in self.x_grid):
            raise ConfigError("x_grid entries must be at least 1")
        for u in self.u_grid:
            if not 1.0 <= u <= 1.5:
                raise ConfigError(f"u = {u:g} outside [1, 1.5]")
        if self.y is not None and self.y < 4:
            raise ConfigError("y must be at least 4")
        if self.seed < 0:
            raise ConfigError("seed must be nonnegative")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"unknown format {self.format!r}")
        if not (
            self.coeff_source == "sato-tate"
            or self.coeff_source.startswith("file:")
        ):
            raise ConfigError(f"unknown coeff_source {self.coeff_source!r}")

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "disc": self.disc,
            "x_grid": list(self.x_grid),
            "u_grid": list(self.u_grid),
            "y": self.y,
            "seed": self.seed,
            "coeff_source": self.coeff_source,
            "output": self.output,
            "format": self.format,
        }


def config_from_json(doc: dict) -> ExperimentConfig:
    """Build and validate a config from a parsed JSON document.  coeff_source
    accepts "sato-tate" or {"file": "path"}."""
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    source = doc.get("coeff_source", "sato-tate")
    if isinstance(source, dict):
        if set(source) != {"file"}:
            raise ConfigError(f"bad coeff_source {source!r}")
        source = f"file:{source['file']}"
    known = {"kind", "disc", "x_grid", "u_grid", "y", "seed",
             "coeff_source", "output", "format"}
    unknown = set(doc) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    try:
        cfg = ExperimentConfig(
            kind=doc.get("kind", ""),
            disc=int(doc.get("disc", 1)),
            x_grid=tuple(float(x) for x in doc.get("x_grid", ())),
            u_grid=tuple(float(u) for u in doc.get("u_grid", (10.0 / 9.0,))),
            y=None if doc.get("y") is None else float(doc["y"]),
            seed=int(doc.get("seed", 42)),
            coeff_source=source,
            output=doc.get("output"),
            format=doc.get("format", "csv"),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"malformed config: {exc}") from None
    cfg.validate()
    return cfg


# ===== runners =====


def _system_for(config: ExperimentConfig, x_max: float):
    fld = make_field(config.disc)
    if config.coeff_source == "sato-tate":
        return sample_sato_tate(fld, x_max, config.seed)
    return load_csv(fld, config.coeff_source[len("file:"):])


def _map(fn, items, threads: int):
    if threads <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def run_experiment(config: ExperimentConfig, threads: int = 1) -> str | None:
    """Run one bundled experiment and write its artifact (CSV or JSON) to
    config.output, or stdout when no path is set.  Returns the path."""
    config.validate()
    fld = make_field(config.disc)
    comments = [
        f"config: {json.dumps(config.to_json(), sort_keys=True)}",
        f"timestamp: {_timestamp()}",
    ]

    if config.kind == "hsum":
        grid = [(y, u) for y in config.x_grid for u in config.u_grid]

        def hsum_row(point):
            y, u = point
            emp = h_partial_sum(fld, y, u)
            pred = h_sum_prediction(fld, y, u)
            return [y, u, emp, pred, emp / pred]

        rows = _map(hsum_row, grid, threads)
        header = ["y", "u", "empirical", "prediction", "ratio"]
    elif config.kind == "signs":
        system = _system_for(config, max(config.x_grid))

        def signs_row(x):
            rep = sign_counts(system, x)
            return [
                rep.x, rep.positives, rep.negatives, rep.zeros,
                rep.euler_product_prediction, rep.half_deviation,
            ]

        rows = _map(signs_row, config.x_grid, threads)
        header = ["x", "positives", "negatives", "zeros",
                  "euler_product_prediction", "half_deviation"]
    else:  # first-negative
        x_max = max(config.x_grid)
        system = _system_for(config, x_max)
        hit = first_negative(system, x_max)
        rows = []
        for x in config.x_grid:
            if hit is not None and hit.norm <= x:
                rows.append([x, hit.norm, system.value(hit)])
            else:
                rows.append([x, None, None])
        header = ["x", "norm", "value"]

    if config.format == "csv":
        emit_csv(comments, header, rows, config.output)
    else:
        payload = {
            "config": config.to_json(),
            "timestamp": _timestamp(),
            "columns": header,
            "rows": [list(row) for row in rows],
        }
        emit_json(payload, config.output)
    return config.output
