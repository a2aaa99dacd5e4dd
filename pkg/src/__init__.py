"""
Lumo
Multigrid and mass-lumping preconditioned solvers for fourth order parabolic problems in mixed form.
"""

__version__ = "0.1.0"
