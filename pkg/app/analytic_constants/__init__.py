from app.analytic_constants.convex import ConvexConstants
from app.analytic_constants.local import LocalConstants

__all__ = ["ConvexConstants", "LocalConstants"]
