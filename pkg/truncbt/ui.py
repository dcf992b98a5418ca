import contextlib
from typing import Callable, Iterable, Optional, Sequence

from rich.console import Console
from rich.style import Style
from rich.table import Table
from rich.text import Text

from truncbt.config import LOCAL_CONFIG

error_console = Console(stderr=True)

_echo_func: Optional[Callable] = None


@contextlib.contextmanager
def set_echo(echo_func=...):
    global _echo_func  # pylint: disable=global-statement
    if echo_func is ...:
        yield
        return
    tmp = _echo_func
    try:
        _echo_func = echo_func
        yield
    finally:
        _echo_func = tmp


@contextlib.contextmanager
def stderr_echo():
    with set_echo(error_console.print):
        yield


def echo(*message):
    if _echo_func is not None:
        _echo_func(*message)


def color(text, col):
    t = Text(text)
    t.stylize(col)
    return t


def emoji(name):
    if not LOCAL_CONFIG.EMOJIS:
        return Text("")
    return Text(name + " ")


def bold(text):
    return Style(bold=True).render(text)


def results_table(
    title: str, columns: Sequence[str], rows: Iterable[Sequence[str]]
) -> Table:
    table = Table(*columns, title=title, show_lines=False)
    for row in rows:
        table.add_row(*row)
    return table


EMOJI_FAIL = emoji("❌")
EMOJI_OK = emoji("✅ ")
EMOJI_SAVE = emoji("💾")
EMOJI_LOAD = emoji("⏳️")
EMOJI_ORBIT = emoji("🪐")
