import logging
import os
from pathlib import Path
from typing import Callable, Iterable, Union

from jinja2 import Environment, PackageLoader, Template, select_autoescape

from .._exceptions import ArgumentError
from ..bench import TIMING_SCHEMA_VERSION, TimingReport
from ..identification import (
    EVALUATION_SCHEMA_VERSION,
    REPORTED_RANKS,
    EvaluationResult,
)

TemplateLike = Union[str, Path, Template]

logger = logging.getLogger(__name__)


class TemplateUtils:
    """
    Collection of Jinja2 template helper functions.
    """

    @staticmethod
    def format_percent(value: object) -> str:
        if value is None:
            return ""
        return f"{float(value):.2f}"  # type: ignore[arg-type]

    @staticmethod
    def format_ms(value: object) -> str:
        if value is None:
            return ""
        return f"{float(value):.3f}"  # type: ignore[arg-type]

    @staticmethod
    def format_params(value: object) -> str:
        if value is None or value == "":
            return "-"
        return f"{float(value):g}"  # type: ignore[arg-type]

    @classmethod
    def to_dict(cls) -> dict[str, Callable]:
        helpers: dict[str, Callable] = {}
        for name in dir(cls):
            if name.startswith("_"):
                continue
            value = getattr(cls, name)
            if callable(value):
                helpers[name] = value
        return helpers


class ReportRenderer:
    """
    Renders evaluation and timing reports as Markdown tables through Jinja2
    templates.
    """

    def _get_template(self, template: TemplateLike | None, *, default: str) -> Template:
        env = Environment(
            loader=PackageLoader("faceid", "templates"),
            autoescape=select_autoescape(enabled_extensions=("html", "xml")),
            keep_trailing_newline=True,
            trim_blocks=True,
            lstrip_blocks=True,
        )

        template_obj = None
        if template is None:
            template_obj = env.get_template(default)
        elif isinstance(template, Path) or (
            isinstance(template, str) and os.path.isfile(template)
        ):
            template_path = Path(template)
            template_obj = env.from_string(template_path.read_text(encoding="utf-8"))
        elif isinstance(template, str):
            template_obj = env.from_string(template)
        elif isinstance(template, Template):
            template_obj = template

        if not template_obj:
            raise ArgumentError(f"Invalid template: {template}")

        return template_obj

    def _render(self, template: TemplateLike | None, *, default: str, **kwargs) -> str:
        template_obj = self._get_template(template, default=default)
        return template_obj.render(**kwargs, **TemplateUtils.to_dict())

    def render_evaluation(
        self,
        results: Iterable[EvaluationResult],
        template: TemplateLike | None = None,
    ) -> str:
        """
        Render identification results as a rank-1/5/10 table, grouped by
        descriptor.
        """
        groups: dict[str, list[EvaluationResult]] = {}
        for result in results:
            groups.setdefault(result.descriptor, []).append(result)

        return self._render(
            template,
            default="cmc_table.md.j2",
            groups=groups,
            ranks=REPORTED_RANKS,
            schema_version=EVALUATION_SCHEMA_VERSION,
        )

    def render_timings(
        self,
        reports: Iterable[TimingReport],
        *,
        host: str = "",
        params_millions: dict[str, float] | None = None,
        template: TemplateLike | None = None,
    ) -> str:
        """
        Render timing reports as a model / parameters / device / extraction
        time table.
        """
        params_millions = params_millions or {}
        return self._render(
            template,
            default="timing_table.md.j2",
            schema_version=TIMING_SCHEMA_VERSION,
            rows=[
                r.to_row(params_millions.get(r.extractor_name), host) for r in reports
            ],
        )
