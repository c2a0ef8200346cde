"""File formats: ideal files (text or JSON), resolution JSON, reports."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .field import Field, parse_field
from .ideals import ColonCertificate, IdealPresentation, make_ideal
from .modules import GradedFreeModule, GradedMap
from .poly import Ring
from .resolution import Resolution

RESOLUTION_FORMAT = "lqres-resolution"


class FormatError(ValueError):
    """Malformed input file."""


@dataclass
class IdealFile:
    ideal: IdealPresentation
    order: tuple[int, ...] | None = None
    certificate: list | None = None

    def ordered_ideal(self) -> IdealPresentation:
        return self.ideal.reordered(self.order) if self.order else self.ideal


def ring_to_json(ring: Ring) -> dict:
    return {"field": ring.field.name, "variables": list(ring.names)}


def ring_from_json(data: dict, field: Field | None = None) -> Ring:
    try:
        names = data["variables"]
    except (KeyError, TypeError) as exc:
        raise FormatError("ring block needs 'variables'") from exc
    if isinstance(names, str):
        names = names.replace(",", " ").split()
    return Ring(names, field or parse_field(data.get("field")))


def _parse_order(raw, m: int) -> tuple[int, ...]:
    if isinstance(raw, str):
        raw = raw.replace(",", " ").split()
    order = tuple(int(i) - 1 for i in raw)
    if sorted(order) != list(range(m)):
        raise FormatError(f"order must be a permutation of 1..{m}")
    return order


def parse_ideal_json(data: dict, field: Field | None = None) -> IdealFile:
    if not isinstance(data, dict):
        raise FormatError("ideal JSON must be an object")
    ring = ring_from_json(data.get("ring", {}), field)
    gens = data.get("generators")
    if not gens:
        raise FormatError("missing 'generators'")
    ideal = make_ideal(ring, gens, data.get("kind"))
    order = _parse_order(data["order"], ideal.m) if data.get("order") else None
    cert = data.get("certificate")
    return IdealFile(ideal, order, cert)


def parse_ideal_text(text: str, field: Field | None = None) -> IdealFile:
    """Parse the ``key: value`` text format.

    Keys: ``field``, ``variables``, ``generators`` (comma separated, may
    continue on following lines), ``kind``, ``order`` (1-based indices) and
    ``certificate k`` (comma separated linear forms for colon k).
    """
    blocks: dict[str, list[str]] = {}
    key = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, rest = line.partition(":")
        if sep and head.strip().split()[0].lower() in (
            "field", "variables", "vars", "generators", "gens", "kind", "order", "certificate", "cert",
        ):
            key = " ".join(head.lower().split())
            blocks.setdefault(key, []).append(rest.strip())
        elif key is not None:
            blocks[key].append(line)
        else:
            raise FormatError(f"unexpected line {raw!r}")

    def joined(*names):
        for nm in names:
            if nm in blocks:
                return ", ".join(x for x in blocks[nm] if x)
        return None

    names = joined("variables", "vars")
    if not names:
        raise FormatError("missing 'variables'")
    ring = Ring(names.replace(",", " ").split(), field or parse_field(joined("field")))
    gens_text = joined("generators", "gens")
    if not gens_text:
        raise FormatError("missing 'generators'")
    gens = [g for g in (x.strip() for x in gens_text.split(",")) if g]
    ideal = make_ideal(ring, gens, joined("kind"))
    order_text = joined("order")
    order = _parse_order(order_text, ideal.m) if order_text else None
    cert = None
    cert_keys = [k for k in blocks if k.split()[0] in ("certificate", "cert")]
    if cert_keys:
        cert = [[] for _ in range(ideal.m)]
        for k in cert_keys:
            parts = k.split()
            if len(parts) != 2 or not parts[1].isdigit():
                raise FormatError(f"certificate lines look like 'certificate 3: x, y', got {k!r}")
            idx = int(parts[1])
            if not 2 <= idx <= ideal.m:
                raise FormatError(f"certificate index {idx} out of range")
            forms = ", ".join(blocks[k])
            cert[idx - 1] = [f.strip() for f in forms.split(",") if f.strip()]
    return IdealFile(ideal, order, cert)


def load_ideal(path: str | Path, field: Field | None = None) -> IdealFile:
    text = Path(path).read_text()
    if str(path).endswith(".json") or text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: {exc}") from exc
        return parse_ideal_json(data, field)
    return parse_ideal_text(text, field)


def ideal_to_json(ideal: IdealPresentation, order=None, certificate: ColonCertificate | None = None) -> dict:
    out = {
        "ring": ring_to_json(ideal.ring),
        "kind": ideal.kind,
        "generators": [str(g) for g in ideal.generators],
    }
    if order is not None:
        out["order"] = [i + 1 for i in order]
    if certificate is not None:
        out["certificate"] = [[str(u) for u in forms] for forms in certificate.forms[1:]]
    return out


def certificate_to_json(cert: ColonCertificate, ideal: IdealPresentation) -> dict:
    return {
        "generators": [str(g) for g in ideal.generators],
        "colon_forms": [[str(u) for u in forms] for forms in cert.forms],
        "q_values": list(cert.q_values),
        "q": cert.q_max,
        "provisional": cert.provisional,
    }


def resolution_to_json(res: Resolution) -> dict:
    return {
        "format": RESOLUTION_FORMAT,
        "version": 1,
        "ring": ring_to_json(res.ring),
        "d": res.d,
        "modules": [list(F.shifts) for F in res.modules],
        "differentials": [
            [[i, j, str(p)] for (i, j), p in sorted(delta.entries.items())]
            for delta in res.differentials
        ],
        "augmentation": None if res.augmentation is None else [str(p) for p in res.augmentation],
    }


def resolution_from_json(data: dict, field: Field | None = None) -> Resolution:
    """Inverse of :func:`resolution_to_json`.

    Homogeneity violations raise :class:`lqres.modules.GradedMapError`.
    """
    if not isinstance(data, dict) or data.get("format") != RESOLUTION_FORMAT:
        raise FormatError(f"not a {RESOLUTION_FORMAT} document")
    try:
        ring = ring_from_json(data["ring"], field)
        modules = tuple(GradedFreeModule(s) for s in data["modules"])
        diffs = []
        for i, triples in enumerate(data["differentials"], start=1):
            entries = {}
            for r, c, text in triples:
                entries[(int(r), int(c))] = ring.parse(text)
            diffs.append(GradedMap(ring, modules[i], modules[i - 1], entries))
        aug = data.get("augmentation")
        aug = None if aug is None else tuple(ring.parse(t) for t in aug)
        return Resolution(ring, int(data["d"]), modules, tuple(diffs), aug)
    except (KeyError, IndexError, TypeError) as exc:
        raise FormatError(f"malformed resolution document: {exc!r}") from exc


def write_json(obj, path: str | Path | None):
    text = json.dumps(obj, indent=2)
    if path is None or str(path) == "-":
        print(text)
    else:
        Path(path).write_text(text + "\n")
