"""Exact computational Lie theory for bundle cohomology on Hermitian
symmetric spaces, invariant vector-valued form algebra, the degree-2
differential of the tangent-sheaf spectral sequence, and polynomial super
vector fields on the Pi-symmetric super-Grassmannian chart."""

__version__ = "0.1.0"
