"""Rich terminal output for the workbench."""

from collections.abc import Iterable

from rich.console import Console
from rich.theme import Theme

WORKBENCH_THEME = Theme({
    "report": "default",
    "status": "dim white",
    "error": "bold red",
})

# Reports go to stdout unstyled so they stay byte-identical across runs
console = Console(theme=WORKBENCH_THEME, highlight=False, emoji=False, soft_wrap=True)
err_console = Console(theme=WORKBENCH_THEME, stderr=True, highlight=False, emoji=False, soft_wrap=True)


def emit(lines: Iterable[str]) -> None:
    """Print report lines."""
    for line in lines:
        console.print(line, markup=False)


def display_status(text: str) -> None:
    """Display a status message."""
    err_console.print(text, style="status", markup=False)


def display_error(text: str) -> None:
    """Display an error message."""
    err_console.print(text, style="error", markup=False)
