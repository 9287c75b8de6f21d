"""Walk one manifold through degeneration, step by step.

Shows the exact quotient data for each invariant direction of a chosen
catalog entry (default: the Hantzsche-Wendt manifold G6), then chases one
iterated collapse chain down to a point.

    python3 scripts/collapse_flow.py [KEY]
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from flatorb.catalog import catalog_get
from flatorb.collapse import collapse, invariant_directions


def main():
    key = sys.argv[1] if len(sys.argv) > 1 else "G6"
    grp = catalog_get(key).group
    print(f"{key}: dim {grp.n}, holonomy order {grp.holonomy().order}")
    for name, basis in invariant_directions(grp):
        res = collapse(grp, basis)
        print(f"  {name:16s} -> {res.label.orbifold_name}")

    print("\niterated chain:")
    current = grp
    label = key
    while current.n > 0:
        name, basis = invariant_directions(current)[0]
        res = collapse(current, basis)
        print(f"  {label} --[{name}]--> {res.label.orbifold_name}")
        current = res.quotient
        label = res.label.orbifold_name


if __name__ == "__main__":
    main()
