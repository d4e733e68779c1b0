# verlindepy/main.py

from verlindepy.formulas.query import ModuliQuery
from verlindepy.formulas.smatrix import s_row_pgl
from verlindepy.formulas.verlinde import VerlindeCalculator
from verlindepy.lattice.weights import LevelContext


def simple_example():
    # Rank 2, fourth power of the determinant bundle, genus 2
    calculator = VerlindeCalculator()

    for d in (0, 1):
        query = ModuliQuery(r=2, d=d, k=4, g=2)
        sl = calculator.sl_dimension(query)
        pgl = calculator.pgl_dimension(query)
        print(f"d={d}: SL_2 dimension {sl.value}, PGL_2 dimension {pgl.value}")

    total = calculator.pgl_total(r=2, k=4, g=2)
    print(f"PGL_2 total: {total.value} (checks: {', '.join(total.checks)})")

    # Resolved S-row behind the total
    for entry in s_row_pgl(LevelContext(2, 4), with_float=True):
        print(f"  {entry.label:>8}  |S'|^2 = {entry.s0_squared}  ({entry.s0_float:.6f})")

    print(f"cache hits {calculator.cache_hits}, misses {calculator.cache_misses}")


if __name__ == "__main__":
    simple_example()
    print("Verlinde example completed successfully!")
