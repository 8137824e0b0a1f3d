"""Exact classification toolkit for homogeneous hypersurfaces with
isotropy in affine four-space."""

__version__ = "0.1.0"
