"""When do inserted classes stop generating new first homology?

Each leaf insertion pushes cycles of the n-particle complex into the
(n+1)-particle complex. The generation check measures the span of all
inserted cycle spaces inside the ambient cycle space exactly; the cokernel
counts genuinely new classes. New classes die out after 4 particles on
3 leaves, 3 particles on 4 leaves, and 2 particles on 5 or more leaves.
"""
from starconfig import generation_check, generation_degree_table, nerve

for k, top in [(3, 5), (4, 5), (5, 4)]:
    table = generation_degree_table(k, top)
    cells = "  ".join(f"{m}:{coker}" for m, coker in table)
    print(f"k={k}  (particles: new classes)   {cells}")
print()

print("one instance in detail, three particles on four leaves:")
report = generation_check(3, 4)
print(f"  rank H_1 = {report.total_rank}")
print(f"  inserted classes span {report.image_rank}")
print(f"  cokernel rank {report.cokernel_rank}, witnesses:")
for w in report.witnesses:
    support = sorted(w.items())
    print(f"    cycle on {len(support)} edges, first terms {support[:4]} ...")
print()

print("the missing rank always equals b1 of the cover nerve:")
for m, k in [(3, 3), (4, 3), (3, 4), (2, 5)]:
    rep = generation_check(m, k)
    beta1 = nerve(m, k).homology(1).betti
    print(f"  ({m} particles, {k} leaves): image {rep.image_rank} + "
          f"nerve b1 {beta1} = {rep.image_rank + beta1} = Q {rep.total_rank}")
