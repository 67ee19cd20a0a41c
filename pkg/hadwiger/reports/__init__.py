"""Reporting helpers for hadwiger."""

from .findings import Report, ReportWriter
from .svg import RenderOptions, render_svg

__all__ = ["Report", "ReportWriter", "RenderOptions", "render_svg"]
