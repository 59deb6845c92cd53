"""Regenerate the example inputs in this directory (deterministic)."""

from pathlib import Path

from dtop.kernels import AnalyticVector
from dtop.operator import toeplitz_matrix
from dtop.quadrature_io import save_symbol, save_vector, write_matrix_csv
from dtop.symbols import HarmonicSymbol, z_symbol, zbar_symbol

HERE = Path(__file__).resolve().parent


def main():
    z, zb = z_symbol(), zbar_symbol()
    symbols = {
        "z": (z, "forward shift symbol"),
        "zbar": (zb, "backward shift symbol"),
        "one": (HarmonicSymbol.constant(1), "identity symbol"),
        "z_plus_2zbar": (z + 2 * zb, "z + 2 conj(z)"),
        "z_plus_zbar2": (z + zbar_symbol(2), "z + conj(z)^2"),
    }
    for name, (phi, desc) in symbols.items():
        save_symbol(phi, HERE / f"{name}.json", name=name, description=desc)
    save_vector(AnalyticVector.monomial(2), HERE / "z2_vector.json")
    write_matrix_csv(toeplitz_matrix(z + 2 * zb, 64), HERE / "t_z_plus_2zbar_n64.csv")


if __name__ == "__main__":
    main()
