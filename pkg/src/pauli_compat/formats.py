"""
JSON and CSV encodings shared by the command line and by user code.

Every float written out is rounded to 12 significant digits, CSV uses ``.``
as decimal separator and ``\\n`` line endings.
"""

import io
import json

import numpy as np

from .channels import PauliChannel, family, unital_decompose
from .compatibility import DualCertificate
from .observables import UnbiasedBinaryObservable

REGION_HEADER = "# pauli-compat region v1"
SIG_DIGITS = 12


def fmt(x):
    return f"{x:.{SIG_DIGITS}g}"


def rounded(obj):
    """Recursively round floats (and numpy scalars/arrays) to 12 significant digits."""
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(fmt(float(obj)))
    if isinstance(obj, np.ndarray):
        return rounded(obj.tolist())
    if isinstance(obj, dict):
        return {k: rounded(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [rounded(v) for v in obj]
    return obj


def dumps(obj):
    return json.dumps(rounded(obj), sort_keys=True)


def observable_from_json(data):
    if not isinstance(data, dict) or "s" not in data:
        raise ValueError('observable JSON needs an "s" field')
    return UnbiasedBinaryObservable.from_json(data)


def channel_from_json(data):
    """Decode ``{"p": [...]}``, ``{"family": name, "param": x}`` or ``{"bloch": [[...]]}``.

    Returns a :class:`PauliChannel` or, for ``"bloch"``, a
    :class:`~pauli_compat.channels.UnitalDecomposition`.
    """
    if not isinstance(data, dict):
        raise ValueError("channel JSON must be an object")
    if "p" in data:
        return PauliChannel(data["p"])
    if "family" in data:
        if "param" not in data:
            raise ValueError('family channel JSON needs a "param" field')
        return family(data["family"], data["param"])
    if "bloch" in data:
        return unital_decompose(np.array(data["bloch"], dtype=float))
    raise ValueError('channel JSON needs one of "p", "family", "bloch"')


def certificate_to_json(cert):
    return {
        "s_max": cert.s_max,
        "m": list(cert.m),
        "lambda_re": cert.lam.real.tolist(),
        "lambda_im": cert.lam.imag.tolist(),
    }


def certificate_from_json(data):
    try:
        lam = np.array(data["lambda_re"], dtype=float) + 1j * np.array(data["lambda_im"], dtype=float)
        m = np.array(data["m"], dtype=float)
        s = float(data.get("s_max", np.trace(lam).real))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed certificate JSON: {exc}") from None
    if lam.shape != (4, 4) or m.shape != (3,):
        raise ValueError("certificate needs a 4x4 lambda and a 3-vector m")
    return DualCertificate(lam, m, s)


def ellipsoid_csv(points):
    """CSV text with header and columns ``x,y,z``."""
    out = io.StringIO(newline="")
    out.write(REGION_HEADER + "\n")
    out.write("x,y,z\n")
    for x, y, z in np.asarray(points, dtype=float):
        out.write(f"{fmt(x)},{fmt(y)},{fmt(z)}\n")
    return out.getvalue()


def simplex_csv(points, flags):
    """CSV text with header and columns ``p0,p1,p2,p3,compatible``."""
    out = io.StringIO(newline="")
    out.write(REGION_HEADER + "\n")
    out.write("p0,p1,p2,p3,compatible\n")
    for p, ok in zip(np.asarray(points, dtype=float), flags):
        out.write(",".join(fmt(v) for v in p) + f",{int(bool(ok))}\n")
    return out.getvalue()


def read_region_csv(text):
    """Parse region CSV text into ``(columns, rows)`` with rows as a float array."""
    lines = text.splitlines()
    if not lines or lines[0] != REGION_HEADER:
        raise ValueError("missing region header")
    columns = lines[1].split(",")
    rows = np.array([[float(v) for v in line.split(",")] for line in lines[2:] if line],
                    dtype=float).reshape(-1, len(columns))
    return columns, rows
