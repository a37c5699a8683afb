"""Tree blocks on graphs of maximum degree Delta.

Reprints the table of (h, xi, q) choices, rechecks every row exactly and
compares the block threshold with the single-site one.
"""
from fractions import Fraction

from scanmix.tree import (TABLE1, TreeBlockParams, complete_tree, build_tree_blocks,
                          evaluate_bounds, search_parameters, single_site_threshold)

print(f"{'Delta':>5} {'h':>3} {'xi':>5} {'q':>3} {'single':>6} {'max bound':>10}")
for delta, row in sorted(TABLE1.items()):
    rep = evaluate_bounds(TreeBlockParams(delta, row.q, row.h, row.xi))
    print(f"{delta:>5} {row.h:>3} {str(row.xi):>5} {row.q:>3} {row.single_site:>6} "
          f"{float(rep.max_bound):>10.6f}" + ("" if rep.satisfied else "  FAIL"))

# one colour fewer breaks the row's parameters
row = TABLE1[3]
rep = evaluate_bounds(TreeBlockParams(3, row.q - 1, row.h, row.xi))
print(f"\nDelta=3 at q={row.q - 1}: max bound {float(rep.max_bound):.4f}, satisfied={rep.satisfied}")

print("search Delta=3, q=5:", search_parameters(3, 5))
print("single-site threshold for Delta=3:", single_site_threshold(3))

# how a complete binary tree is cut into blocks of height 2
tree = complete_tree(2, 4)
for b in build_tree_blocks(tree, 2).blocks:
    print("block", b.sites, "boundary", b.boundary)
