r"""Root package of ``ransacsi``."""
