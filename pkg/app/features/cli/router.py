import argparse

from app.core.config import get_settings
from app.features.cli.schemas import OutputFormat

SUBCOMMANDS = {
    "parse": "validate a presentation and print it canonically",
    "gb": "degree-truncated Groebner basis",
    "hilbert": "Hilbert profile up to --max-d",
    "member": "ideal membership of --element",
    "even-part": "presentation of the even part on pair generators",
    "peirce": "presentation of the Peirce component eAe",
    "verify-equiv": "compare the Hilbert profiles of two presentations",
    "check-map": "check that --map sends relations of SOURCE into the ideal of TARGET",
    "simplify": "Tietze-simplify a presentation",
    "mprime": "show the parity split and the M' set",
    "evidence": "independence evidence for relation schemas",
}


def _common(parser: argparse.ArgumentParser):
    parser.add_argument("--max-deg", type=int, default=None, dest="max_deg")
    parser.add_argument("--precedence", default=None, help="generator order, e.g. a,b,c")
    parser.add_argument("--format", choices=[f.value for f in OutputFormat], default=None, dest="output_format")
    parser.add_argument("--output", default=None, help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=get_settings().PROJECT_NAME, description="Finite presentations of associative algebras")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    commands = {}
    for name, help_text in SUBCOMMANDS.items():
        commands[name] = sub.add_parser(name, help=help_text)
        _common(commands[name])

    for name in ("parse", "gb", "hilbert", "member", "even-part", "peirce", "simplify", "mprime", "evidence"):
        commands[name].add_argument("inputs", nargs=1, metavar="FILE")
    commands["verify-equiv"].add_argument("inputs", nargs=2, metavar="FILE")
    commands["check-map"].add_argument("inputs", nargs=2, metavar=("SOURCE", "TARGET"))

    commands["hilbert"].add_argument("--max-d", type=int, default=None, dest="max_d")
    commands["member"].add_argument("--element", required=True)
    commands["member"].add_argument("--expand-schemas", action="store_true", dest="expand_schemas")
    for name in ("even-part", "peirce"):
        commands[name].add_argument("--simplify", action="store_true", default=None)
    commands["peirce"].add_argument("--override-witnesses", action="store_true", dest="override_witnesses")
    commands["verify-equiv"].add_argument("--ratio", type=int, default=1)
    commands["verify-equiv"].add_argument("--max-d", type=int, default=None, dest="max_d")
    commands["check-map"].add_argument("--map", required=True, dest="generator_map", help='e.g. "a=x*y,b=y^2"')
    commands["evidence"].add_argument("--count", type=int, default=5)
    return parser


def config_kwargs(args: argparse.Namespace) -> dict:
    """Namespace -> RunConfig fields; unset flags fall back to the settings defaults."""
    kwargs = {k: v for k, v in vars(args).items() if k != "verbose" and v is not None}
    if "precedence" in kwargs:
        kwargs["precedence"] = [name.strip() for name in kwargs["precedence"].split(",") if name.strip()]
    return kwargs
