"""
Report Writer

Render command results as JSON or text and write them to stdout or a file.
File output goes to a temporary file in the target directory and is renamed
into place only after the write succeeds.
"""

import json
import logging
import os
import sys
import tempfile
from pathlib import Path
from typing import Any, Optional

from src.liptrop.reporting import CheckReport


def render_json(document: Any) -> str:
    return json.dumps(document, indent=2, ensure_ascii=False) + '\n'


def render_checks_text(reports: list[CheckReport]) -> str:
    lines = []
    for report in reports:
        line = f"{report.status.value.upper():4}  {report.check}  ({report.samples} samples)"
        if not report.passed:
            line += f"  witness={json.dumps(report.to_dict()['witness'])}"
        lines.append(line)
    return '\n'.join(lines) + '\n'


def write_report(text: str, output: Optional[str] = None) -> None:
    """
    Write rendered output.

    Args:
        text: Rendered report
        output: File path, or None / '-' for stdout
    """
    if output is None or output == '-':
        sys.stdout.write(text)
        sys.stdout.flush()
        return

    target = Path(output)
    directory = target.parent if str(target.parent) else Path('.')
    fd, temp_path = tempfile.mkstemp(prefix=f'.{target.name}.', suffix='.tmp', dir=directory)
    try:
        with os.fdopen(fd, 'w', encoding='utf-8') as f:
            f.write(text)
        os.replace(temp_path, target)
    except BaseException:
        if os.path.exists(temp_path):
            os.unlink(temp_path)
        raise
    logging.info(f"Wrote report to {target}")
