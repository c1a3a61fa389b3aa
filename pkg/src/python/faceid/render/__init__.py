from ._renderer import ReportRenderer, TemplateUtils

__all__ = ["ReportRenderer", "TemplateUtils"]
