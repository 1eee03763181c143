"""Write the bundled scheme and Hadamard files into data/."""

from pathlib import Path

from hadscheme.catalogue import builtin_order8, order4_schemes
from hadscheme.hadamard import H0, H1, H2, H3, sylvester
from hadscheme.io import write_hadamard, write_scheme

DATA = Path(__file__).resolve().parents[1] / "data"


def main():
    DATA.mkdir(exist_ok=True)
    for name, scheme in order4_schemes().items():
        write_scheme(DATA / f"{name}.scheme", scheme)
    for name, make in builtin_order8().items():
        write_scheme(DATA / f"{name}.scheme", make())
    for name, h in {"H0": H0, "H1": H1, "H2": H2, "H3": H3, "sylvester8": sylvester(3)}.items():
        write_hadamard(DATA / f"{name}.had", h)
    print(f"wrote {len(list(DATA.iterdir()))} files to {DATA}")


if __name__ == "__main__":
    main()
