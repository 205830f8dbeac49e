from dataclasses import dataclass
from dotenv import load_dotenv
import os


@dataclass
class Settings:
    log_level: str = "INFO"
    # Resource guards; exceeding any of them exits the CLI with status 3
    max_players: int = 20
    enumeration_limit: int = 10_000_000
    exhaustive_limit: int = 12
    # 0 disables the rounded "decimal" mirror in CLI output
    decimal_places: int = 0
    run_slow_tests: bool = False


def load_settings() -> Settings:
    load_dotenv()
    return Settings(
        log_level=os.getenv("LOG_LEVEL", "INFO"),
        max_players=int(os.getenv("FAIRSLICE_MAX_PLAYERS", "20")),
        enumeration_limit=int(os.getenv("FAIRSLICE_ENUMERATION_LIMIT", "10000000")),
        exhaustive_limit=int(os.getenv("FAIRSLICE_EXHAUSTIVE_LIMIT", "12")),
        decimal_places=int(os.getenv("FAIRSLICE_DECIMAL_PLACES", "0")),
        run_slow_tests=os.getenv("RUN_SLOW_TESTS", "false").lower() == "true",
    )
