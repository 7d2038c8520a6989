"""Command line interface: run one episode, sweep seeds, or replay a log.

Command-line flags override config-file values, which override the
built-in defaults. Frames go to --frames DIR when the effective output
format is not 'none'.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from . import config as cfgmod
from .config import Config, ConfigError
from .engine import run_batch, run_episode
from .logfile import read_log_header, write_logfile
from .render import FORMATS, render_frame, write_gif


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    grp = parser.add_argument_group("model options (override the config file)")
    grp.add_argument("--grid", choices=["rectangular", "hexagonal"])
    grp.add_argument("--n", type=int)
    grp.add_argument("--agents", type=int)
    grp.add_argument("--tau", type=int)
    grp.add_argument("--alpha0", type=float)
    grp.add_argument("--alpha-wind", dest="alpha_wind", type=float)
    grp.add_argument("--beta", type=float)
    grp.add_argument("--zeta", type=float)
    grp.add_argument("--wind", help="compass direction the wind blows toward, or none")
    grp.add_argument("--agent-mode", dest="agent_mode")
    grp.add_argument("--logfile", choices=["true", "false"])
    grp.add_argument("--seed", type=int)
    grp.add_argument("--c-healthy", dest="c_healthy", type=float)
    grp.add_argument("--c-ext", dest="c_ext", type=float)
    grp.add_argument("--c-time", dest="c_time", type=float)
    grp.add_argument("--output", choices=list(cfgmod.OUTPUT_MODES))


# CLI flag -> (config key, schema parser); reuses the file-side validation
_FLAG_SCHEMA = {
    "grid": "grid",
    "n": "n",
    "agents": "agents",
    "tau": "tau",
    "alpha0": "alpha0",
    "alpha_wind": "alpha_wind",
    "beta": "beta",
    "zeta": "zeta",
    "wind": "wind",
    "agent_mode": "agent_mode",
    "logfile": "logfile",
    "seed": "seed",
    "c_healthy": "c_healthy",
    "c_ext": "c_ext",
    "c_time": "c_time",
    "output": "output",
}


def build_config(args: argparse.Namespace) -> Config:
    """Defaults, then config file, then command-line overrides."""
    if getattr(args, "config", None):
        text = Path(args.config).read_text(encoding="utf-8")
        cfg = cfgmod.parse_config(text)
    else:
        cfg = Config()
    overrides = {}
    for flag, key in _FLAG_SCHEMA.items():
        value = getattr(args, flag, None)
        if value is None:
            continue
        field_name, parser = cfgmod._SCHEMA[key]
        overrides[field_name] = parser(key, str(value))
    if overrides:
        cfg = dataclasses.replace(cfg, **overrides)
    return cfgmod.validate_config(cfg)


def _parse_seeds(spec: str) -> list[int]:
    spec = spec.strip()
    if ".." in spec:
        lo, _, hi = spec.partition("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(part) for part in spec.split(",") if part.strip()]


class _FrameWriter:
    def __init__(self, directory: Path, fmt: str, gif_path=None):
        self.directory = directory
        self.fmt = fmt
        self.gif_path = gif_path
        self.images = []
        self.count = 0
        directory.mkdir(parents=True, exist_ok=True)

    def __call__(self, forest, agents) -> None:
        frame = render_frame(forest, agents, fmt=self.fmt)
        if self.fmt == "ascii":
            path = self.directory / f"frame_{self.count:04d}.txt"
            path.write_text(frame, encoding="utf-8")
        else:
            path = self.directory / f"frame_{self.count:04d}.png"
            frame.save(path)
            if self.gif_path is not None:
                self.images.append(frame)
        self.count += 1

    def finish(self) -> None:
        if self.gif_path is not None and self.images:
            write_gif(self.images, self.gif_path)


def _frame_writer(args, cfg: Config) -> _FrameWriter | None:
    fmt = args.format or (cfg.output if cfg.output != "none" else None)
    if fmt is None:
        return None
    return _FrameWriter(Path(args.frames), fmt, getattr(args, "gif", None))


def _print_summary(log) -> None:
    final = log.records[-1]
    c = final.census
    print(
        f"steps={final.t} termination={log.termination} "
        f"healthy={c.n_healthy} afire={c.n_afire} burnt={c.n_burnt} "
        f"ext={c.n_ext} nonflam={c.n_nonflam} cost={final.cost}"
    )


def cmd_run(args) -> int:
    cfg = build_config(args)
    writer = _frame_writer(args, cfg)
    log = run_episode(cfg, on_step=writer)
    if writer is not None:
        writer.finish()
        print(f"wrote {writer.count} frames to {writer.directory}")
    if cfg.logfile:
        path = write_logfile(log, directory=args.logdir)
        print(f"wrote log to {path}")
    _print_summary(log)
    return 0


def cmd_batch(args) -> int:
    cfg = build_config(args)
    seeds = _parse_seeds(args.seeds)
    report = run_batch(cfg, seeds)
    print(f"episodes={len(report.seeds)}")
    print(
        f"final cost: mean={report.mean_cost:.4f} std={report.std_cost:.4f} "
        f"min={report.min_cost:.4f} max={report.max_cost:.4f}"
    )
    lengths = report.episode_lengths
    print(f"episode length: mean={sum(lengths) / len(lengths):.2f} max={max(lengths)}")
    if args.logdir is not None:
        for log in report.logs:
            write_logfile(log, directory=args.logdir)
        print(f"wrote {len(report.logs)} logs to {args.logdir}")
    return 0


def cmd_render(args) -> int:
    cfg, seed = read_log_header(args.log)
    fmt = args.format or (cfg.output if cfg.output != "none" else "png")
    writer = _FrameWriter(Path(args.frames), fmt, getattr(args, "gif", None))
    log = run_episode(cfg, seed=seed, on_step=writer)
    writer.finish()
    print(f"wrote {writer.count} frames to {writer.directory}")
    _print_summary(log)
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="firecell",
        description="Wildfire cellular-automaton simulator with firefighting agents.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a single episode")
    p_run.add_argument("--config", help="path to a flat key:value config file")
    p_run.add_argument("--frames", default="frames", help="frame output directory")
    p_run.add_argument("--format", choices=list(FORMATS))
    p_run.add_argument("--gif", help="also assemble PNG frames into this GIF")
    p_run.add_argument("--logdir", default=".", help="directory for the episode log")
    _add_config_flags(p_run)
    p_run.set_defaults(func=cmd_run)

    p_batch = sub.add_parser("batch", help="run a seed sweep")
    p_batch.add_argument("--config")
    p_batch.add_argument(
        "--seeds", required=True, help="comma list '0,1,2' or inclusive range '0..99'"
    )
    p_batch.add_argument("--logdir", help="write one log per episode here")
    _add_config_flags(p_batch)
    p_batch.set_defaults(func=cmd_batch)

    p_render = sub.add_parser("render", help="replay frames from an episode log")
    p_render.add_argument("log", help="episode log file written by run/batch")
    p_render.add_argument("--frames", default="frames")
    p_render.add_argument("--format", choices=list(FORMATS))
    p_render.add_argument("--gif")
    p_render.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
