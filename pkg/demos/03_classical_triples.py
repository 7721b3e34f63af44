# Three classical commuting triples without commuting isometric dilations.
# None of them is symmetric 3-regular: the product has a smaller defect
# space than the sum of the factor defect spaces, in every ordering.
from kregular import symmetric_k_regular
from kregular.corpus import crabb_davie, kaijser_varopoulos, parrott, run_case

for make in (kaijser_varopoulos, crabb_davie, parrott):
    case = make()
    rep = symmetric_k_regular(case.obj, use_shortcut=False)
    print(f"{case.name:20s} dim D_T = {rep.product_defect_dim}, factor dims {rep.per_factor_defect_dims}, "
          f"regular orderings {sum(r.regular for r in rep.per_permutation.values())}/{len(rep.per_permutation)}")

# Every stored value is recomputed from scratch by the generic engines.
rows = run_case(crabb_davie())
print("\nCrabb-Davie checks:")
for r in rows:
    print(f"  {r.key:12s} {'pass' if r.passed else 'FAIL'}")
