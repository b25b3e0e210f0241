"""2-XNF SAT solving, conversion and random instances."""

from ._core import (
    ContractError,
    Formula,
    InputError,
    Lineral,
    ParseError,
    anf_to_2xnf,
    brute_force,
    cli,
    count_models,
    export_cnf,
    export_cnfxor,
    gen_random,
    parse_xnf,
    read_xnf,
    solve,
    to_2xnf,
    verify_model,
    write_xnf,
)

__all__ = [
    "ContractError",
    "Formula",
    "InputError",
    "Lineral",
    "ParseError",
    "anf_to_2xnf",
    "brute_force",
    "cli",
    "count_models",
    "export_cnf",
    "export_cnfxor",
    "gen_random",
    "parse_xnf",
    "read_xnf",
    "solve",
    "to_2xnf",
    "verify_model",
    "write_xnf",
]
