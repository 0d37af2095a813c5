"""Core numerics: symplectic algebra, Gaussian states, grid transforms, mixtures."""
