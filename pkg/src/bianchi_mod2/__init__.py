"""bianchi-mod2-verifier: mod 2 cohomology of SL_2(Z[sqrt(-2)][1/2]) checked end to end."""

__version__ = "0.0.0"  # Managed by setuptools_scm
