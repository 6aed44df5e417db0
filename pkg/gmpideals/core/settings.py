from pydantic_settings import BaseSettings, SettingsConfigDict
from functools import lru_cache

class Settings(BaseSettings):
    APP_HOST: str = "0.0.0.0"
    APP_PORT: int = 8000
    LOG_LEVEL: str = "INFO"

    # Cotas de recursos del motor (sobrescribibles por entorno o por flags)
    EXHAUSTIVE_THRESHOLD: int = 8
    LATTICE_BOUND: int = 5000
    NORMALITY_POWER: int = 3
    CLOSURE_BOX_BOUND: int = 250_000

    ENABLE_OTEL: bool = False
    OTEL_EXPORTER_OTLP_ENDPOINT: str = "http://localhost:4317"
    OTEL_SERVICE_NAME: str = "gmpideals-api"

    model_config = SettingsConfigDict(env_file=".env", env_file_encoding="utf-8", extra="ignore")

@lru_cache
def get_settings() -> Settings:
    return Settings()
