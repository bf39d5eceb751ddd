from functools import lru_cache
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    # Application
    app_name: str = "grundy-lab"
    app_version: str = "1.0.0"
    schema_version: str = "1"
    log_level: str = "INFO"

    # Runs
    threads: int = 1
    budget_ms: int = 10_000
    output_format: str = "json"
    seed: int = 0
    nmax: int = 8

    # Solver guards
    bruteforce_limit: int = 9
    subset_oracle_limit: int = 16
    max_vertices: int = 4096

    # Bound comparisons
    tolerance: float = 1e-9
    exact_check_threshold: float = 1e-6
    slack_digits: int = 6

    class Config:
        env_prefix = "GRUNDY_LAB_"
        env_file = ".env"
        extra = "ignore"


@lru_cache()
def get_settings() -> Settings:
    return Settings()


settings = get_settings()
