from pydantic_settings import BaseSettings, SettingsConfigDict
from functools import lru_cache

class Settings(BaseSettings):
    PROJECT_NAME: str = "fpa"

    LOG_LEVEL: str = "WARNING"
    LOG_FILE: str = ""  # empty disables the rotating file handler

    # Degree bound used when a command gets no --max-deg
    DEFAULT_MAX_DEG: int = 10
    DEFAULT_FORMAT: str = "text"
    SIMPLIFY_BY_DEFAULT: bool = False

    FIXTURES_DIR: str = "fixtures"

    # Tietze-prune the homogenized and the odd presentations inside the Peirce pipeline.
    # Off gives the same algebra but is far slower: about four minutes for fixtures/mat2.fpa at degree 8.
    PEIRCE_PRUNE_STAGES: bool = True

    model_config = SettingsConfigDict(env_file=".env", case_sensitive=True, extra="ignore")

@lru_cache()
def get_settings():
    return Settings()
