"""Regenerate the octahedron so(4) fixture from the two-triple ansatz."""
import sys
from pathlib import Path

from wittcomp.composite import model_to_json, solve_octahedron_model

out = Path(__file__).resolve().parents[1] / "src" / "wittcomp" / "data" / "octahedron_so4.json"


def main() -> int:
    signs, T = solve_octahedron_model()
    out.write_text(model_to_json(signs, T))
    print(f"wrote {out}")
    for v, (s, t) in sorted(signs.items()):
        print(f"  {v}: {s:+d} J + {t:+d} K")
    return 0


if __name__ == "__main__":
    sys.exit(main())
