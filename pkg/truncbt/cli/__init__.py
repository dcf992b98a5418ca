"""
truncbt's command-line interface
"""
from truncbt.cli.aut import aut_cmd
from truncbt.cli.kraft import kraft
from truncbt.cli.level import level_exp_cmd
from truncbt.cli.main import app
from truncbt.cli.orbit import orbit_cmd
from truncbt.cli.traverso import traverso_cmd
from truncbt.cli.truncation import truncation_cmd
from truncbt.cli.verify import verify_cmd

__all__ = [
    "app",
    "kraft",
    "traverso_cmd",
    "truncation_cmd",
    "orbit_cmd",
    "aut_cmd",
    "level_exp_cmd",
    "verify_cmd",
]


def main():
    app()


if __name__ == "__main__":
    main()
