"""scrollbranch: exact geometry of branch divisors on the quadric scroll.

Subpackages:
  exactalg     -- number fields, sparse polynomials, resultants, solving
  latticecalc  -- intersection lattices and Euler-number ledgers
  scrollgeom   -- the scroll, its hyperplane sections and charts
  branchfamily -- the branch family, its curves and singular points
  quadricfit   -- recovering the distinguished quadric from incidence data
  modulicount  -- equivalence moves and the parameter count
  cli          -- command line entry point
"""

__version__ = "0.1.0"
