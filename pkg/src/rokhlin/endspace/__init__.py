"""End-space calculus: normal forms, derivatives, homeomorphism and embedding tests."""
from .profile import CBProfile, Level, cb_derivative, cb_profile
from .rewrite import NormalForm, RewriteDepthExceeded, normalize, normalize_steps
from .sorts import analyze, canonical_germ, top_key

__all__ = ["CBProfile", "Level", "cb_derivative", "cb_profile", "NormalForm",
           "RewriteDepthExceeded", "normalize", "normalize_steps", "analyze", "canonical_germ",
           "top_key"]
