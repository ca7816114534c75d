"""
settings.py

프로젝트 설정 및 환경 변수
"""

import os
from pathlib import Path
from dotenv import load_dotenv

# 프로젝트 루트 디렉토리
PROJECT_ROOT = Path(__file__).resolve().parents[1]

# .env 파일 로드
load_dotenv(PROJECT_ROOT / ".env")


def _int_env(name: str, default: int) -> int:
    value = os.getenv(name)
    return default if value in (None, "") else int(value)


# 디버그 모드
DEBUG = os.getenv("DEBUG", "false").lower() == "true"

# 캠페인 설정
MAX_WORKERS = _int_env("MAX_WORKERS", 4)  # 병렬 처리 워커 수
DEFAULT_SEED = _int_env("DEFAULT_SEED", 20240611)
DEFAULT_TRIALS = _int_env("DEFAULT_TRIALS", 10)

# 파라미터 상한 (--allow-override 로 해제)
MAX_P = _int_env("SIMPSON_MAX_P", 13)
MAX_N = _int_env("SIMPSON_MAX_N", 6)
MAX_D = _int_env("SIMPSON_MAX_D", 12)
MAX_RANK = _int_env("SIMPSON_MAX_RANK", 4)
MAX_DIM = _int_env("SIMPSON_MAX_DIM", 3)
MAX_LEVEL = _int_env("SIMPSON_MAX_LEVEL", 3)

# 디렉토리 경로
DATA_DIR = PROJECT_ROOT / "data"
JOBS_DIR = DATA_DIR / "jobs"
OUTPUT_DIR = DATA_DIR / "output"

# 리포트 스키마
REPORT_SCHEMA_VERSION = "1.0"

# 디렉토리 생성
for directory in [DATA_DIR, JOBS_DIR, OUTPUT_DIR]:
    directory.mkdir(parents=True, exist_ok=True)

if DEBUG:
    print(f"✓ 설정 로드 완료")
    print(f"  - 작업 디렉토리: {JOBS_DIR}")
    print(f"  - 출력 디렉토리: {OUTPUT_DIR}")
    print(f"  - 워커 수: {MAX_WORKERS}")
    print(f"  - 기본 시드: {DEFAULT_SEED}")
