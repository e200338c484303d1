"""Command-line front end: ``qedprop {check,propagator,potential,sweep,falloff}``.

Settings come from a flat ``key = value`` file (``--config``) and are
overridden by flags.  Exit status: 0 success, 1 an identity failed,
2 configuration or input error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import checks, coulomb, propagators, renorm, tensoralg
from .errors import ConfigError, NonIntegrableSpectrum, PoleAtPoint, QedPropError, SingularSymbol, ZeroCoefficient
from .scalarfield import Polynomial, RationalFn, parse, parse_coeffs

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2

KNOWN_KEYS = {
    "alpha_b", "mtilde2", "f", "f_num", "f_den",
    "k2_min", "k2_max", "k2_steps", "r_min", "r_max", "r_steps", "r_spacing",
    "out", "json",
    "z_a", "z_psi", "z_m", "z_e", "z_alpha", "rho", "alpha", "beta", "e", "m",
    "q", "const", "potential_model", "yukawa_m2", "alphas", "proca_m2", "seed", "assert_ca2_zero",
}

DEFAULTS = {
    "alpha_b": "1",
    "mtilde2": "1",
    "k2_min": "1",
    "k2_max": "10",
    "k2_steps": "10",
    "r_min": "0.1",
    "r_max": "10",
    "r_steps": "20",
    "r_spacing": "log",
    "q": "1",
    "const": "1",
    "potential_model": "yukawa",
    "yukawa_m2": "1",
    "alphas": "1/2,1,2,5",
    "proca_m2": "1",
    "seed": "0",
    "assert_ca2_zero": "true",
}


def fmt(x) -> str:
    return format(float(x), ".17g")


def read_config_file(path: str) -> dict[str, str]:
    p = Path(path)
    if not p.is_file():
        raise ConfigError(f"config file not found: {path}")
    out = {}
    for lineno, raw in enumerate(p.read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, value = line.split("=", 1)
        out[_norm_key(key)] = value.strip()
    return out


def _norm_key(key: str) -> str:
    k = key.strip().lower().replace("-", "_")
    if k not in KNOWN_KEYS:
        raise ConfigError(f"unknown config key {key.strip()!r}")
    return k


@dataclass
class RunConfig:
    command: str
    values: dict[str, str]

    def get(self, key: str, default=None):
        return self.values.get(key, DEFAULTS.get(key, default))

    def rational(self, key: str) -> Fraction:
        v = self.get(key)
        try:
            return Fraction(v)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"{key} must be an exact rational, got {v!r}") from exc

    def optional_rational(self, key: str) -> Fraction | None:
        return None if self.get(key) is None else self.rational(key)

    def integer(self, key: str) -> int:
        v = self.get(key)
        try:
            return int(v)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"{key} must be an integer, got {v!r}") from exc

    def flag(self, key: str) -> bool:
        v = str(self.get(key, "false")).lower()
        if v in ("1", "true", "yes", "on"):
            return True
        if v in ("0", "false", "no", "off"):
            return False
        raise ConfigError(f"{key} must be a boolean, got {v!r}")

    def f(self) -> RationalFn | None:
        try:
            if self.get("f") is not None:
                return parse(self.get("f"))
            if self.get("f_num") is None and self.get("f_den") is None:
                return None
            num = parse_coeffs(self.get("f_num", "0"))
            den = parse_coeffs(self.get("f_den", "1"))
            return RationalFn(Polynomial(num), Polynomial(den))
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"bad self-energy model f: {exc}") from exc

    def model(self, default_f: RationalFn | None = None) -> propagators.PropagatorModel:
        f = self.f()
        try:
            return propagators.PropagatorModel(self.rational("alpha_b"), self.rational("mtilde2"),
                                               f if f is not None else (default_f or RationalFn.s()))
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def k2_grid(self) -> list[Fraction]:
        lo, hi, n = self.rational("k2_min"), self.rational("k2_max"), self.integer("k2_steps")
        if n <= 0:
            raise ConfigError("k^2 grid is empty (k2_steps must be >= 1)")
        if n == 1:
            return [lo]
        if hi < lo:
            raise ConfigError("k2_max must not be below k2_min")
        return [lo + (hi - lo) * i / (n - 1) for i in range(n)]

    def radial_grid(self) -> coulomb.RadialGrid:
        try:
            return coulomb.RadialGrid(float(self.rational("r_min")), float(self.rational("r_max")),
                                      self.integer("r_steps"), self.get("r_spacing"))
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def renorm(self) -> tuple[renorm.RenormConstants, renorm.PhysicalParams]:
        d = checks.CheckConfig()
        rc_d, pp_d = d.renorm, d.physical
        try:
            rc = renorm.RenormConstants(
                self._or("z_a", rc_d.zA), self._or("z_psi", rc_d.zPsi), self._or("z_m", rc_d.zM),
                self._or("z_e", rc_d.zE), self._or("z_alpha", rc_d.zAlpha), self.optional_rational("rho"),
            )
            pp = renorm.PhysicalParams(self._or("e", pp_d.e), self._or("m", pp_d.m),
                                       self._or("alpha", pp_d.alpha), self._or("beta", pp_d.beta))
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        return rc, pp

    def _or(self, key, default):
        v = self.optional_rational(key)
        return default if v is None else v


# commands -------------------------------------------------------------------------

def cmd_check(cfg: RunConfig) -> tuple[int, str]:
    rc, pp = cfg.renorm()
    model_keys = {"alpha_b", "mtilde2", "f", "f_num", "f_den"}
    s = RationalFn.s()
    ccfg = checks.CheckConfig(
        model=cfg.model(default_f=s / (s + 1)) if model_keys & cfg.values.keys() else checks.CheckConfig().model,
        renorm=rc,
        physical=pp,
        assert_ca2_zero=cfg.flag("assert_ca2_zero"),
        seed=cfg.integer("seed"),
        radial_grid=cfg.radial_grid(),
    )
    results = checks.run_all(ccfg)
    ok = all(r.passed for r in results)
    if cfg.flag("json"):
        payload = {
            "passed": ok,
            "n_checks": len(results),
            "n_failed": sum(not r.passed for r in results),
            "checks": [{"name": r.name, "identity": r.identity, "passed": r.passed, "detail": r.detail}
                       for r in results],
        }
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.name:<34} {r.identity}  [{r.detail}]" for r in results]
        lines.append(f"{sum(r.passed for r in results)}/{len(results)} identity groups passed")
        text = "\n".join(lines) + "\n"
    return (EXIT_OK if ok else EXIT_FAIL), text


def _propagator_rows(symbol: tensoralg.RankTwoSymbol, grid: list[Fraction]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k2", "d1", "d2", "transverse", "longitudinal"])
    p = tensoralg.decompose(symbol)
    for s in grid:
        try:
            row = [symbol.u1(s), symbol.u2(s), p.transverse(s), p.longitudinal(s)]
        except PoleAtPoint as exc:
            raise ConfigError(f"propagator has a pole at k2 = {s}; choose a grid avoiding it") from exc
        w.writerow([fmt(s)] + [fmt(x) for x in row])
    return buf.getvalue()


def cmd_propagator(cfg: RunConfig) -> tuple[int, dict[str, str]]:
    """Returns ``{suffix: csv_text}``: ``""`` for the bare table, ``"renormalized"`` if ``f`` is set."""
    grid = cfg.k2_grid()
    f = cfg.f()
    pm = cfg.model()
    try:
        out = {"": _propagator_rows(propagators.bare_propagator(pm), grid)}
        if f is not None:
            out["renormalized"] = _propagator_rows(propagators.renormalized_propagator(pm), grid)
    except SingularSymbol as exc:
        raise ConfigError(f"propagator does not exist: {exc}") from exc
    return EXIT_OK, out


def cmd_potential(cfg: RunConfig) -> tuple[int, str]:
    kind = cfg.get("potential_model")
    src = coulomb.StaticSource(cfg.rational("q"), cfg.rational("const"))
    if kind == "yukawa":
        m2 = cfg.rational("yukawa_m2")
        if m2 <= 0:
            raise ConfigError("yukawa_m2 must be positive")
        spectrum = coulomb.yukawa_spectrum(src.q * src.const, m2)
        model_id = f"yukawa;m2={m2};q={src.q}"
    elif kind == "corrected":
        f = cfg.f()
        if f is None:
            raise ConfigError("potential_model=corrected needs a self-energy model f")
        pm = cfg.model()
        try:
            spectrum = coulomb.corrected_spectrum(pm, src)
        except SingularSymbol as exc:
            raise ConfigError(f"f + mtilde2 vanishes identically: {exc}") from exc
        model_id = f"corrected;alphaB={pm.alphaB};mtilde2={pm.mtilde2};q={src.q}"
    else:
        raise ConfigError(f"potential_model must be 'yukawa' or 'corrected', got {kind!r}")
    try:
        curve = coulomb.radial_fourier(spectrum, cfg.radial_grid(), model_id=model_id)
    except NonIntegrableSpectrum as exc:
        raise ConfigError(f"spectrum cannot be transformed: {exc}") from exc
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["r", "V", "model_id"])
    for r, v in curve.samples:
        w.writerow([fmt(r), fmt(v), model_id])
    return EXIT_OK, buf.getvalue()


def cmd_sweep(cfg: RunConfig) -> tuple[int, str]:
    try:
        alphas = [Fraction(a) for a in cfg.get("alphas").split(",") if a.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad alphas list: {exc}") from exc
    if not alphas or any(a <= 0 for a in alphas):
        raise ConfigError("alphas must be a non-empty list of positive rationals")
    f = cfg.f() if cfg.f() is not None else RationalFn.zero()
    mtilde2 = cfg.rational("mtilde2")
    try:
        rep = coulomb.gauge_independence_sweep(mtilde2, f, alphas, coulomb.StaticSource(cfg.rational("q")))
    except SingularSymbol as exc:
        raise ConfigError(str(exc)) from exc
    ok = rep.spectra_identical and rep.polarization_identical
    if cfg.flag("json"):
        text = json.dumps({
            "alphas": [str(a) for a in rep.alphas],
            "mtilde2": str(mtilde2),
            "f": str(f),
            "spectra_identical": rep.spectra_identical,
            "polarization_identical": rep.polarization_identical,
            "max_deviation": str(rep.max_deviation),
            "d2": [str(d) for d in rep.d2],
            "d2_distinct": rep.d2_distinct,
            "verdict": rep.verdict,
        }, indent=2, sort_keys=True) + "\n"
    else:
        yn = lambda b: "yes" if b else "no"
        lines = [f"gauge sweep: mtilde2={mtilde2} f={f}"]
        lines += [f"alphaB={a}  d2={d}" for a, d in zip(rep.alphas, rep.d2)]
        lines += [
            f"spectra identical: {yn(rep.spectra_identical)}",
            f"polarization identical: {yn(rep.polarization_identical)}",
            f"max spectrum deviation: {rep.max_deviation}",
            f"d2 distinct across alphaB: {yn(rep.d2_distinct)}",
            f"verdict: {rep.verdict}",
        ]
        text = "\n".join(lines) + "\n"
    return (EXIT_OK if ok else EXIT_FAIL), text


def cmd_falloff(cfg: RunConfig) -> tuple[int, str]:
    pm = cfg.model()
    symbols = [("bare_propagator", propagators.bare_propagator(pm))]
    if cfg.f() is not None:
        try:
            symbols.append(("renormalized_propagator", propagators.renormalized_propagator(pm)))
        except SingularSymbol as exc:
            raise ConfigError(str(exc)) from exc
    proca_m2 = cfg.rational("proca_m2")
    if proca_m2 <= 0:
        raise ConfigError("proca_m2 must be positive")
    symbols.append(("massive_qed_integrand", propagators.massive_qed_integrand(propagators.MassiveQEDParams(proca_m2))))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["symbol", "component", "exponent_exact", "exponent_fit", "rounded"])
    for name, sym in symbols:
        for comp in propagators.FALLOFF_COMPONENTS:
            try:
                exact = propagators.falloff_exponent(sym, comp, "exact")
                fit = propagators.falloff_exponent(sym, comp, "regression")
            except ZeroCoefficient:
                continue
            w.writerow([name, comp, fmt(exact), fmt(fit), f"{fit:.2f}"])
    return EXIT_OK, buf.getvalue()


# argument parsing ----------------------------------------------------------------

FLAG_KEYS = {
    "alpha_b": "--alpha-b", "mtilde2": "--mtilde2", "f_num": "--f-num", "f_den": "--f-den",
    "k2_min": "--k2-min", "k2_max": "--k2-max", "k2_steps": "--k2-steps",
    "r_min": "--r-min", "r_max": "--r-max", "r_steps": "--r-steps",
    "q": "--q", "potential_model": "--model", "yukawa_m2": "--yukawa-m2", "alphas": "--alphas",
    "seed": "--seed",
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="flat 'key = value' settings file")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    common.add_argument("--json", action="store_const", const="true", default=None,
                        help="machine-readable report (check, sweep)")
    for key, flag in FLAG_KEYS.items():
        common.add_argument(flag, dest=key, default=None, metavar=key.upper())
    parser = argparse.ArgumentParser(prog="qedprop", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("check", parents=[common], help="run every identity suite")
    sub.add_parser("propagator", parents=[common], help="tabulate bare (and dressed) propagator coefficients")
    sub.add_parser("potential", parents=[common], help="static potential curve V(r) as CSV")
    sub.add_parser("sweep", parents=[common], help="gauge-independence sweep over alphaB")
    sub.add_parser("falloff", parents=[common], help="large-k exponents of propagator coefficients")
    return parser


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _suffixed(path: str, suffix: str) -> str:
    p = Path(path)
    return str(p.with_name(f"{p.stem}.{suffix}{p.suffix}"))


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        values = read_config_file(args.config) if args.config else {}
        for key in list(FLAG_KEYS) + ["out", "json"]:
            v = getattr(args, key)
            if v is not None:
                values[key] = v
        cfg = RunConfig(args.command, values)
        out = cfg.get("out")
        if args.command == "propagator":
            code, tables = cmd_propagator(cfg)
            if out is None:
                sys.stdout.write(tables[""])
                if "renormalized" in tables:
                    sys.stdout.write("\n# renormalized\n" + tables["renormalized"])
            else:
                for suffix, text in tables.items():
                    _write(text, _suffixed(out, suffix) if suffix else out)
            return code
        handler = {"check": cmd_check, "potential": cmd_potential, "sweep": cmd_sweep, "falloff": cmd_falloff}
        code, text = handler[args.command](cfg)
        _write(text, out)
        return code
    except ConfigError as exc:
        print(f"qedprop: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except QedPropError as exc:
        print(f"qedprop: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
