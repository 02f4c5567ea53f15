"""Artifact configuration: knowledge bases, index snapshot, server binding."""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass, field

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .rdf import Iri
from .vocab import DEFAULT_DATA_BASE


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class KnowledgeBaseConfig:
    name: str
    files: tuple[str, ...] = ()  # empty means the bundled .ttl files


@dataclass(frozen=True)
class ArtifactConfig:
    knowledge_bases: tuple[KnowledgeBaseConfig, ...] = (KnowledgeBaseConfig("default"),)
    base_iri: Iri = DEFAULT_DATA_BASE
    snapshot_path: str = "ccsv-index.snapshot"
    host: str = "127.0.0.1"
    port: int = 8077
    default_limit: int = 50
    max_limit: int = 1000
    cors_origins: tuple[str, ...] = ("*",)

    def __post_init__(self):
        if not self.knowledge_bases:
            raise ConfigError("at least one knowledge base must be configured")
        names = [kb.name for kb in self.knowledge_bases]
        if len(set(names)) != len(names):
            raise ConfigError(f"knowledge base names must be unique: {names}")


def load_config(path: str | None) -> ArtifactConfig:
    """Read a TOML config file; None yields the defaults (bundled kb)."""
    if path is None:
        return ArtifactConfig()
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"malformed config {path}: {exc}") from None

    here = os.path.dirname(os.path.abspath(path))

    def resolve(p: str) -> str:
        return p if os.path.isabs(p) else os.path.join(here, p)

    kbs = []
    for entry in data.get("knowledge_base", []):
        if "name" not in entry:
            raise ConfigError("knowledge_base entry without a name")
        kbs.append(
            KnowledgeBaseConfig(
                name=entry["name"],
                files=tuple(resolve(p) for p in entry.get("files", [])),
            )
        )
    if not kbs:
        kbs = [KnowledgeBaseConfig("default")]

    return ArtifactConfig(
        knowledge_bases=tuple(kbs),
        base_iri=Iri(data.get("base_iri", DEFAULT_DATA_BASE.value)),
        snapshot_path=resolve(data.get("snapshot_path", "ccsv-index.snapshot")),
        host=data.get("host", "127.0.0.1"),
        port=int(data.get("port", 8077)),
        default_limit=int(data.get("default_limit", 50)),
        max_limit=int(data.get("max_limit", 1000)),
        cors_origins=tuple(data.get("cors_origins", ["*"])),
    )
