from pydantic_settings import BaseSettings
from typing import List


class Settings(BaseSettings):
    """애플리케이션 설정 관리"""

    # Server Configuration
    host: str = "0.0.0.0"
    port: int = 8080
    debug: bool = False
    log_level: str = "INFO"

    # Mesh validation (상대 허용오차)
    volume_overlap_tol: float = 1e-12
    all_pairs_overlap_check: bool = False
    geometry_tol: float = 1e-10

    # Shape measures
    kappa_m_max_dim: int = 4

    # Shelling search
    search_seed: int = 0
    search_budget: int = 1_000_000
    search_per_root: int = 10
    brute_force_limit: int = 8

    # Estimation (proved | hilbert, minkowski | l1)
    estimate_mode: str = "hilbert"
    combine_rule: str = "minkowski"

    # FEEC reference oracle
    dense_dof_limit: int = 3000
    eig_residual_tol: float = 1e-8
    solver_cross_check: bool = False
    default_refinements: int = 3

    # Report
    report_schema_version: str = "1.0"

    # CORS
    allowed_hosts: List[str] = ["*"]

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"
        case_sensitive = False

    def get_estimate_mode(self):
        """설정의 국소 상수 모드 (hilbert | proved)"""
        from app.models.estimate import EstimateMode

        return EstimateMode(self.estimate_mode.lower())

    def get_search_config(self, k: int = 0, p: float = 2.0):
        """현재 설정으로 SearchConfig 생성"""
        from app.models.shelling import SearchConfig

        return SearchConfig(
            seed=self.search_seed,
            budget=self.search_budget,
            per_root=self.search_per_root,
            k=k,
            p=p,
        )


# 싱글톤 인스턴스
settings = Settings()
