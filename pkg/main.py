"""
Command-line surface: simulate, verify, copnumber, render, decompose.

Exit codes: 0 captured (or cop number found), 2 escape / non-capture,
3 inconclusive (state cap hit), 1 any other error.
"""
import logging
import math
import time
from enum import Enum
from pathlib import Path
from typing import Any, Optional

import typer
from dotenv import load_dotenv
from rich.console import Console
from rich.table import Table

from decomposition.dump import dump_decomposition
from engine.game import play
from engine.policies import GreedyEvade, RandomRobber, RobberPolicy, StationaryRobber
from engine.state import OutcomeKind
from engine.trace_io import load_trace, save_trace
from engine.verifier import VerdictKind, verify_controller
from errors import (FormatError, GridConstructionError, InvariantViolation, PursuitError, StateCapExceeded,
                    StrategyRefusal)
from grid_model.covering import covering_projection
from grid_model.digraph import Digraph
from grid_model.formats import load_board, parse_board
from grid_model.grid import OrientedGrid, kregular_grid, random_grid, uniform_grid
from grid_model.quadrangulation import Quadrangulation, make_quadrangulation
from oracle_service import CopNumberOracle, ResultsCache, append_regression
from render_service import ascii_board, trace_strip_html
from settings import get_settings
from strategies.registry import build_controller, strategy_ids

load_dotenv()

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_ERROR, EXIT_ESCAPE, EXIT_INCONCLUSIVE = 0, 1, 2, 3

app = typer.Typer(help="Cops and robber on straight-ahead oriented toroidal grids", no_args_is_help=True)
console = Console()


class RobberChoice(str, Enum):
    greedy = "greedy"
    random = "random"
    stationary = "stationary"


@app.callback()
def configure(verbose: bool = typer.Option(False, "--verbose", "-v", help="Log at DEBUG level")):
    level = "DEBUG" if verbose else get_settings().log_level
    logging.basicConfig(level=getattr(logging, level), format="%(levelname)s %(name)s: %(message)s")


def nearest_kregular_n(n: int, k: int) -> int:
    step = 2 * k
    return max(step, round(n / step) * step)


def board_from_generator(spec: str) -> Any:
    """uniform:n, kregular:n:k, random:n:seed[:max_width], cycle:n, quad:r:s:t"""
    kind, *raw = spec.split(":")
    try:
        args = [int(a) for a in raw]
    except ValueError:
        raise ValueError(f"generator arguments must be integers: {spec}")
    if kind == "uniform" and len(args) == 1:
        return uniform_grid(args[0])
    if kind == "kregular" and len(args) == 2:
        n, k = args
        if k < 1 or n % (2 * k):
            raise GridConstructionError(f"kregular:{n}:{k} needs 2k | n; nearest valid n is "
                                        f"{nearest_kregular_n(n, max(k, 1))}")
        return kregular_grid(n, k)
    if kind == "random" and len(args) in (2, 3):
        return random_grid(args[0], args[1], args[2] if len(args) == 3 else None)
    if kind == "cycle" and len(args) == 1:
        return Digraph.directed_cycle(args[0])
    if kind == "quad" and len(args) == 3:
        return make_quadrangulation(*args)
    raise ValueError(f"unknown generator '{spec}'")


def oracle_states(size: int, k: int) -> int:
    """Positions the oracle solves for k cops on size vertices"""
    return 2 * math.comb(size + k - 1, k) * size


def resolve_board(gen: Optional[str], file: Optional[Path], inline: Optional[str]) -> Any:
    sources = [s for s in (gen, file, inline) if s is not None]
    if len(sources) != 1:
        raise ValueError("give exactly one of --gen, --file, --grid")
    if gen is not None:
        return board_from_generator(gen)
    if file is not None:
        return load_board(file)
    return parse_board(inline.replace(";", "\n"))


def make_policy(choice: RobberChoice, board: Any, seed: int) -> RobberPolicy:
    if choice is RobberChoice.random:
        return RandomRobber(board, seed=seed)
    if choice is RobberChoice.stationary:
        return StationaryRobber(board)
    return GreedyEvade(board)


def fail(error: Exception) -> typer.Exit:
    """Print a library error and turn it into an exit code"""
    message = f"❌ {error}"
    if isinstance(error, FormatError):
        message = f"❌ format error, {error}"
    elif isinstance(error, StrategyRefusal) and error.minimal_n is not None:
        message = f"❌ {error} (needs n >= {error.minimal_n})"
    console.print(message, style="red", markup=False)
    if isinstance(error, StateCapExceeded):
        return typer.Exit(EXIT_INCONCLUSIVE)
    return typer.Exit(EXIT_ERROR)


GEN = typer.Option(None, "--gen", "-g", help="uniform:n, kregular:n:k, random:n:seed[:w], cycle:n, quad:r:s:t")
FILE = typer.Option(None, "--file", "-f", help="Board file (orientation or quadrangulation)")
INLINE = typer.Option(None, "--grid", help="Board text inline, ';' between lines")


@app.command()
def simulate(
    gen: Optional[str] = GEN,
    file: Optional[Path] = FILE,
    inline: Optional[str] = INLINE,
    strategy: str = typer.Option("chaser1", "--strategy", "-s", help=f"One of: {', '.join(strategy_ids())}"),
    robber: RobberChoice = typer.Option(RobberChoice.greedy, "--robber", "-r"),
    seed: int = typer.Option(0, "--seed"),
    max_steps: Optional[int] = typer.Option(None, "--max-steps", help="Defaults to PURSUIT_MAX_STEPS"),
    trace_path: Path = typer.Option(Path("trace.json"), "--trace", "-o", help="Where to write the trace JSON"),
    html: Optional[Path] = typer.Option(None, "--html", help="Also write an HTML strip of the trace"),
):
    """Play one game and write its trace."""
    try:
        board = resolve_board(gen, file, inline)
        controller = build_controller(strategy, board)
        trace = play(board, controller, make_policy(robber, board, seed), max_steps)
        save_trace(trace, trace_path)
        if html is not None:
            trace_strip_html(trace, html)
    except (PursuitError, KeyError, ValueError) as e:
        raise fail(e)

    outcome = trace.outcome
    console.print(f"{controller.name} vs {robber.value}: [bold]{outcome}[/bold] ({controller.cop_count} cops)")
    console.print(f"💾 trace written to {trace_path}")
    raise typer.Exit(EXIT_OK if outcome.kind is OutcomeKind.CAPTURED else EXIT_ESCAPE)


@app.command()
def verify(
    gen: Optional[str] = GEN,
    file: Optional[Path] = FILE,
    inline: Optional[str] = INLINE,
    strategy: str = typer.Option(..., "--strategy", "-s"),
    cap: Optional[int] = typer.Option(None, "--cap", help="Product-state cap, defaults to PURSUIT_VERIFY_STATE_CAP"),
):
    """Check a strategy against every robber start and every robber play."""
    try:
        board = resolve_board(gen, file, inline)
        controller = build_controller(strategy, board)
        verdict = verify_controller(board, controller, state_cap=cap)
    except (PursuitError, KeyError, ValueError) as e:
        raise fail(e)

    table = Table(title=f"verify {controller.name} on {getattr(board, 'descriptor', board)}")
    table.add_column("verdict")
    table.add_column("states", justify="right")
    table.add_column("worst capture", justify="right")
    table.add_column("goal states", justify="right")
    table.add_column("seconds", justify="right")
    table.add_row(verdict.kind.value, str(verdict.states), str(verdict.max_capture_time or "-"),
                  str(verdict.goals), f"{verdict.seconds:.2f}")
    console.print(table)
    if verdict.witness is not None:
        w = verdict.witness
        console.print(f"escape witness: start {w.start}, moves {w.moves}, cycle from {w.cycle_from}", markup=False)
    raise typer.Exit({VerdictKind.CAPTURED_FOR_ALL: EXIT_OK, VerdictKind.ESCAPE: EXIT_ESCAPE,
                      VerdictKind.INCONCLUSIVE: EXIT_INCONCLUSIVE}[verdict.kind])


@app.command()
def copnumber(
    gen: Optional[str] = GEN,
    file: Optional[Path] = FILE,
    inline: Optional[str] = INLINE,
    k_max: int = typer.Option(3, "--k-max", min=1),
    cap: Optional[int] = typer.Option(None, "--cap", help="Defaults to PURSUIT_ORACLE_STATE_CAP"),
    cover: bool = typer.Option(False, "--cover", help="For a quadrangulation, also solve its minimal cover"),
    cache: bool = typer.Option(True, "--cache/--no-cache", help="Reuse and store verdicts on disk"),
):
    """Compute the cop number with the oracle, up to k_max."""
    try:
        board = resolve_board(gen, file, inline)
        boards = [board]
        if cover:
            if not isinstance(board, Quadrangulation):
                raise ValueError("--cover needs a quadrangulation (quad:r:s:t or a Q file)")
            boards.append(covering_projection(board).source)
        oracle = CopNumberOracle(state_cap=cap)
        store = ResultsCache() if cache else None
        rows, values = [], []
        for b in boards:
            digraph = b.to_digraph()
            began = time.perf_counter()
            value = oracle.cop_number(digraph, k_max, store)
            values.append(value)
            rows.append({"grid": getattr(b, "descriptor", digraph.name), "k": value if value is not None else k_max,
                         "verdict": "win" if value is not None else "lose",
                         "states": oracle_states(len(digraph), value or k_max),
                         "seconds": round(time.perf_counter() - began, 4)})
        append_regression(rows)
    except (PursuitError, ValueError) as e:
        raise fail(e)

    for row, value in zip(rows, values):
        console.print(f"c({row['grid']}) = {value if value is not None else f'>{k_max}'}")
    if cover and None not in values and values[0] > values[1]:
        raise fail(InvariantViolation(f"the quotient needs {values[0]} cops but its cover only {values[1]}"))
    raise typer.Exit(EXIT_OK)


@app.command()
def render(
    trace_path: Optional[Path] = typer.Option(None, "--trace", "-t", help="Trace JSON to render"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="HTML output for a trace"),
    gen: Optional[str] = GEN,
    file: Optional[Path] = FILE,
    inline: Optional[str] = INLINE,
    step: Optional[int] = typer.Option(None, "--step", help="Print this trace step as an ASCII board"),
):
    """Render a trace to HTML, or print a board (or one trace step) as ASCII."""
    try:
        if trace_path is None:
            board = resolve_board(gen, file, inline)
            console.print(ascii_board(board, []))
            raise typer.Exit(EXIT_OK)
        trace = load_trace(trace_path)
        if step is not None:
            board = resolve_board(gen, file, inline)
            record = next((s for s in trace.steps if s.step == step), None)
            if record is None:
                raise ValueError(f"trace has no step {step}")
            console.print(ascii_board(board, record.cops, record.robber))
        if out is not None:
            trace_strip_html(trace, out)
            console.print(f"💾 HTML strip written to {out}")
    except (PursuitError, ValueError, OSError) as e:
        raise fail(e)
    raise typer.Exit(EXIT_OK)


@app.command()
def decompose(
    gen: Optional[str] = GEN,
    file: Optional[Path] = FILE,
    inline: Optional[str] = INLINE,
):
    """Print the stream and conflux structure of a grid."""
    try:
        board = resolve_board(gen, file, inline)
        if not isinstance(board, OrientedGrid):
            raise ValueError("decompose needs an oriented grid")
        console.print(dump_decomposition(board), markup=False)
    except (PursuitError, ValueError) as e:
        raise fail(e)
    raise typer.Exit(EXIT_OK)


if __name__ == "__main__":
    app()
