"""Committee solutions of infeasible systems of strict linear inequalities
in the plane, with exact rational arithmetic throughout."""

__version__ = "0.1.0"
