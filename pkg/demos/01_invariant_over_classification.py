"""Walk through the exact layer: build restricted root systems, compute the
regularity invariant, and reproduce the full classification table.

Run:  python demos/01_invariant_over_classification.py
"""

from fractions import Fraction

from sphreg import catalog, rootsys

# ---------------------------------------------------------------------------
# A single system, by hand: the split rank-two special linear group.
# Simple-root coordinates everywhere; the Gram matrix fixes the geometry.
# ---------------------------------------------------------------------------
a2 = rootsys.build_root_system("A", 2, {"all": 1})
print("positive roots of A2 (coefficients, multiplicity):")
for root in a2.positive_roots:
    print("   ", root.coeffs, root.multiplicity)

rho = rootsys.rho(a2)
print("half sum of positive roots:", rho.coords)
print("invariant kappa =", rootsys.kappa(a2), "(half the minimal weighted root count)")

# The infimum defining the invariant is attained at a fundamental weight.
for i, weight in enumerate(rootsys.fundamental_weights(a2), start=1):
    print(f"fundamental weight mu{i} = {weight.coords}, n = {rootsys.n_of(a2, weight)}")

# ---------------------------------------------------------------------------
# Non-reduced systems carry a root and its double; both count.
# ---------------------------------------------------------------------------
bc1 = rootsys.build_root_system("BC", 1, {"short": 2, "long": 1})
print("\nBC1 roots:", [(r.coeffs, r.multiplicity) for r in bc1.positive_roots])
print("kappa(BC1, m=2,1) =", rootsys.kappa(bc1))

# ---------------------------------------------------------------------------
# The whole classification at small parameters, checked row by row.
# ---------------------------------------------------------------------------
table = catalog.kappa_table(catalog.builtin_catalog())
mismatches = [row for row in table if not row[5]]
print(f"\nclassification table: {len(table)} rows, {len(mismatches)} mismatches")
for row_id, group, rank, computed, expected, _ in table[:6]:
    print(f"   {row_id:<16} {group:<10} rank {rank}  kappa = {computed} (expected {expected})")
print("   ...")

# Products: only noncompact factors contribute.
by_id = {e.id: e for e in catalog.builtin_catalog().entries}
value = catalog.product_kappa([by_id["AI-n2"], by_id["AI-n3"]], [False, False])
assert value == Fraction(1, 2)
print("product of the rank-one and rank-two split groups:", value)
