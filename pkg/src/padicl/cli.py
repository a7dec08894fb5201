"""Command-line driver.

Jobs are flat ``key = value`` files (``#`` starts a comment); extra
``key=value`` arguments on the command line override file entries.  Output is
one JSON document on stdout with sorted keys.

Recognised keys
    field       Q, or a squarefree D > 1 for Q(sqrt D)
    modulus     positive integer f, or ideal generators ``x:y,x:y`` (x + y theta)
    character   ``trivial`` or ``n:e1,e2,...`` (order n, exponents on the
                cyclic generators of the ray class group)
    p, M        prime and precision
    s           integer, or ``digits:d0,d1,...`` base-p digits, least significant first
    m           twist index (default 1)
    L           number of Iwasawa coefficients
    aux         auxiliary prime override, ``c`` or ``c:t``
    height      height bound for ``verify``
    N           comma-separated lengths for ``bench``
    oracle      bernoulli | hurwitz | classical | cone | twisted
    k, b, f, a, c   oracle arguments
"""

import argparse
import json
import sys
import time

from .errors import ConfigError, PadiclError

EXIT_OK = 0


# --- config parsing ------------------------------------------------------------

def parse_config_text(text):
    cfg = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        cfg[key] = value
    return cfg


def load_config(path, overrides):
    cfg = {}
    if path == "-":
        cfg.update(parse_config_text(sys.stdin.read()))
    elif path:
        try:
            with open(path, encoding="utf-8") as fh:
                cfg.update(parse_config_text(fh.read()))
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from exc
    for item in overrides:
        cfg.update(parse_config_text(item))
    return cfg


def _int(cfg, key, default=None):
    if key not in cfg:
        if default is None:
            raise ConfigError(f"missing key {key!r}")
        return default
    try:
        return int(cfg[key])
    except ValueError as exc:
        raise ConfigError(f"{key} must be an integer, got {cfg[key]!r}") from exc


def parse_field(cfg):
    from .number_field import Field

    raw = cfg.get("field", "Q").strip()
    if raw.upper() in ("Q", "RATIONAL", "1"):
        return Field()
    try:
        return Field(int(raw))
    except ValueError as exc:
        raise ConfigError(f"field must be Q or a squarefree integer, got {raw!r}") from exc


def parse_modulus(cfg, field):
    from .number_field import Ideal

    raw = cfg.get("modulus")
    if raw is None:
        raise ConfigError("missing key 'modulus'")
    if ":" not in raw:
        try:
            n = int(raw)
        except ValueError as exc:
            raise ConfigError(f"bad modulus {raw!r}") from exc
        if n < 1:
            raise ConfigError("modulus must be positive")
        return Ideal.from_int(field, n)
    gens = []
    for part in raw.split(","):
        try:
            x, y = (int(v) for v in part.split(":"))
        except ValueError as exc:
            raise ConfigError(f"bad ideal generator {part!r}") from exc
        gens.append(field.elem(x, y))
    return Ideal.from_generators(field, gens)


def parse_character(cfg, group, p):
    from .rayclass import Character, trivial_character

    raw = cfg.get("character", "trivial").strip()
    if raw == "trivial":
        return trivial_character(group)
    try:
        n_txt, exps_txt = raw.split(":")
        n = int(n_txt)
        exps = [int(v) for v in exps_txt.split(",")] if exps_txt.strip() else []
    except ValueError as exc:
        raise ConfigError(f"bad character spec {raw!r}") from exc
    if n < 1:
        raise ConfigError("character order must be positive")
    if n % p == 0:
        raise ConfigError(f"character order {n} is divisible by p={p}")
    return Character(group, n, exps)


def parse_s(cfg, p, M):
    from .padic_core import PAdicInt

    raw = cfg.get("s")
    if raw is None:
        raise ConfigError("missing key 's'")
    raw = raw.strip()
    if raw.startswith("digits:"):
        try:
            digits = [int(v) for v in raw[len("digits:"):].split(",")]
        except ValueError as exc:
            raise ConfigError(f"bad digit string {raw!r}") from exc
        if any(not 0 <= d < p for d in digits):
            raise ConfigError(f"digits must lie in [0, {p})")
        if len(digits) < M:
            digits = digits + [0] * (M - len(digits))
        return PAdicInt.from_digits(digits[:M], p, M).residue
    try:
        return int(raw)
    except ValueError as exc:
        raise ConfigError(f"s must be an integer or a digit string, got {raw!r}") from exc


def parse_aux(cfg, field):
    from .rayclass import make_aux

    raw = cfg.get("aux")
    if raw is None:
        return None
    try:
        if ":" in raw:
            c, t = (int(v) for v in raw.split(":"))
        else:
            c, t = int(raw), None
    except ValueError as exc:
        raise ConfigError(f"bad aux spec {raw!r}") from exc
    return make_aux(field, c, t)


def _prime(cfg):
    from .padic_core import is_prime

    p = _int(cfg, "p")
    if not is_prime(p):
        raise ConfigError(f"p={p} is not prime")
    return p


def _job(cfg):
    """Common parse for eval / iwasawa / invariants / cones."""
    from .lfunction import ray_class_group
    from .rayclass import Modulus

    field = parse_field(cfg)
    p = _prime(cfg)
    M = _int(cfg, "M", 8)
    if M < 1:
        raise ConfigError("M must be positive")
    f = parse_modulus(cfg, field)
    Modulus(field, f).check_h1(p)
    group = ray_class_group(field, f)
    chi = parse_character(cfg, group, p)
    aux = parse_aux(cfg, field)
    m = _int(cfg, "m", 1)
    return field, f, chi, p, M, aux, m


# --- commands --------------------------------------------------------------------

def cmd_eval(cfg, args):
    from .lfunction import l_value

    field, f, chi, p, M, aux, m = _job(cfg)
    s = parse_s(cfg, p, M)
    cert = l_value(field, f, chi, p, s, M, m=m, aux=aux)
    return cert.to_json(timing=args.timing)


def _series(cfg):
    from .lfunction import iwasawa_series

    field, f, chi, p, M, aux, m = _job(cfg)
    e = 2 if p == 2 else 1
    L = _int(cfg, "L", -(-M // e))
    if L < 1:
        raise ConfigError("L must be positive")
    return iwasawa_series(field, f, chi, p, M, L, m=m, aux=aux)


def cmd_iwasawa(cfg, args):
    return _series(cfg).to_json(timing=args.timing)


def cmd_invariants(cfg, args):
    from .lfunction import lambda_mu_invariants

    cert = _series(cfg)
    out = lambda_mu_invariants(cert).to_json()
    out.update({k: cert.context[k] for k in ("field", "modulus", "character", "aux_prime")})
    out.update({"p": cert.p, "M": cert.M, "L": cert.L})
    return out


def cmd_cones(cfg, args):
    from .lfunction import prepare

    field, f, chi, p, M, aux, m = _job(cfg)
    setup = prepare(field, f, chi, p, m, aux)
    classes = []
    for I, dec in zip(setup.reps, setup.decomps):
        classes.append({
            "ideal": str(I),
            "norm": I.norm(),
            "cones": [c.to_json() for c in dec.cones],
        })
    return {
        "field": str(field),
        "modulus": str(f),
        "aux_prime": {"c": setup.aux.c, "t": setup.aux.t},
        "count": sum(len(d.cones) for d in setup.decomps),
        "classes": classes,
    }


def cmd_verify(cfg, args):
    from .lfunction import prepare
    from .shintani import verify_decomposition

    field, f, chi, p, M, aux, m = _job(cfg)
    B = _int(cfg, "height", 1000)
    setup = prepare(field, f, chi, p, m, aux)
    reports = []
    ok = True
    for I, dec in zip(setup.reps, setup.decomps):
        rep = verify_decomposition(dec, B)
        ok = ok and rep.ok
        reports.append({
            "ideal": str(I),
            "cones": len(dec.cones),
            "checked": rep.checked,
            "covered_once": rep.covered_once,
            "duplicates": len(rep.duplicates),
            "misses": len(rep.misses),
        })
    return {"field": str(field), "modulus": str(f), "height": B, "ok": ok, "classes": reports}


def cmd_oracle(cfg, args):
    from . import oracle as orc

    kind = cfg.get("oracle")
    k = _int(cfg, "k", 1)
    if kind == "bernoulli":
        poly = orc.bernoulli_polynomial(k)
        return {"oracle": kind, "k": k, "coeffs": [orc.fraction_to_json(c) for c in poly]}
    if kind == "hurwitz":
        b, f = _int(cfg, "b"), _int(cfg, "f")
        return {"oracle": kind, "b": b, "f": f, "k": k, "value": orc.fraction_to_json(orc.hurwitz_partial_zeta(b, f, k))}
    if kind == "twisted":
        a, f, c = _int(cfg, "a"), _int(cfg, "f"), _int(cfg, "c")
        val = orc.exact_twisted_partial_zeta_Q(a, f, c, k)
        return {"oracle": kind, "a": a, "f": f, "c": c, "k": k, "value": orc.fraction_to_json(val)}
    if kind == "classical":
        from .lfunction import ray_class_group
        from .number_field import Field

        f = _int(cfg, "f")
        group = ray_class_group(Field(), f)
        chi = parse_character(cfg, group, _int(cfg, "p", 0) or 1 << 61)
        val = orc.classical_L_value(orc.exact_character(chi), k, f)
        coeffs = val.coeffs if isinstance(val, orc.ExactCyc) else [val]
        return {"oracle": kind, "f": f, "k": k, "character": chi.describe(),
                "value": [orc.fraction_to_json(c) for c in coeffs]}
    if kind == "cone":
        from .shintani import decompose_rational

        a, f, c = _int(cfg, "a", 1), _int(cfg, "f"), _int(cfg, "c")
        dec = decompose_rational(a, f, c)
        vals = [orc.exact_cone_series_value(cone, c, 0, k) for cone in dec.cones]
        return {"oracle": kind, "a": a, "f": f, "c": c, "k": k,
                "cones": [cone.to_json() for cone in dec.cones],
                "value": orc.fraction_to_json(sum(vals))}
    raise ConfigError("oracle must be one of bernoulli, hurwitz, classical, cone, twisted")


def cmd_bench(cfg, args):
    import numpy as np

    from .cone_zeta import AuxContext, cone_measure
    from .lfunction import CACHE, prepare

    field, f, chi, p, M, aux, m = _job(cfg)
    Ns = [int(v) for v in cfg.get("N", "8,16,32,64").split(",")]
    setup = prepare(field, f, chi, p, m, aux)
    cone = setup.cones()[0]
    ctx = AuxContext(setup.field, setup.aux, p, M)
    rows = []
    for N in Ns:
        t0 = time.perf_counter()
        cone_measure(cone, ctx, N)
        rows.append({"N": N, "seconds": round(time.perf_counter() - t0, 6)})
    slope = None
    if len(rows) >= 2:
        x = np.log([r["N"] for r in rows])
        y = np.log([max(r["seconds"], 1e-9) for r in rows])
        slope = round(float(np.polyfit(x, y, 1)[0]), 3)
    return {
        "field": str(field),
        "modulus": str(f),
        "p": p,
        "M": M,
        "degree": field.degree,
        "expected_slope": field.degree + 1,
        "slope": slope,
        "rows": rows,
        "cache": {"hits": CACHE.hits, "misses": CACHE.misses},
    }


COMMANDS = {
    "eval": cmd_eval,
    "iwasawa": cmd_iwasawa,
    "invariants": cmd_invariants,
    "cones": cmd_cones,
    "verify": cmd_verify,
    "oracle": cmd_oracle,
    "bench": cmd_bench,
}


def build_parser():
    ap = argparse.ArgumentParser(prog="padicl", description="p-adic L-functions of totally real fields of degree <= 2")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("config", nargs="?", help="key = value job file, or - for stdin")
    ap.add_argument("overrides", nargs="*", help="extra key=value settings")
    fmt = ap.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="compact JSON (default)")
    fmt.add_argument("--pretty", action="store_true", help="indented JSON")
    ap.add_argument("--timing", action="store_true", help="include timing_ms in results")
    return ap


def dump(obj, pretty=False):
    if pretty:
        return json.dumps(obj, sort_keys=True, indent=2)
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    config = args.config
    overrides = list(args.overrides)
    if config and "=" in config:
        overrides.insert(0, config)
        config = None
    try:
        cfg = load_config(config, overrides)
        result = COMMANDS[args.command](cfg, args)
    except PadiclError as exc:
        print(dump({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return exc.exit_code
    except MemoryError:
        print(dump({"error": "MemoryError", "message": "out of memory"}), file=sys.stderr)
        return 4
    print(dump(result, args.pretty))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
