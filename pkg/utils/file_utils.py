"""
file_utils.py

파일 I/O 유틸리티 (작업 파일, JSON 리포트, JSONL 기록, CSV 요약)
"""

import csv
import json
from pathlib import Path
from typing import List, Dict, Any

import yaml


class JobFileError(ValueError):
    """작업 파일을 읽을 수 없거나 형식이 잘못됨"""


def read_job(file_path: Path) -> Dict[str, Any]:
    """
    작업 파일 읽기 (YAML 은 JSON 의 상위집합이므로 두 형식 모두 허용)

    Args:
        file_path: 작업 파일 경로

    Returns:
        작업 필드 딕셔너리

    Raises:
        JobFileError: 파일 없음, 파싱 실패, 최상위가 매핑이 아님
    """
    if not file_path.exists():
        raise JobFileError(f"job file not found: {file_path}")
    try:
        with open(file_path, 'r', encoding='utf-8') as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as e:
        raise JobFileError(f"invalid job file {file_path.name}: {e}") from e
    if not isinstance(data, dict):
        raise JobFileError(f"job file {file_path.name} must contain a mapping")
    return data


def write_json(file_path: Path, obj: Dict[str, Any]) -> bool:
    """
    JSON 파일 쓰기 (들여쓰기 2, 키 정렬)

    Returns:
        성공 여부
    """
    try:
        file_path.parent.mkdir(parents=True, exist_ok=True)
        with open(file_path, 'w', encoding='utf-8') as f:
            json.dump(obj, f, ensure_ascii=False, indent=2, sort_keys=True)
            f.write('\n')
        return True

    except OSError as e:
        print(f"❌ JSON 쓰기 실패: {e}")
        return False


def append_jsonl(file_path: Path, obj: Dict[str, Any]) -> bool:
    """
    JSONL 파일에 항목 추가

    Args:
        file_path: 파일 경로
        obj: 추가할 JSON 객체

    Returns:
        성공 여부
    """
    try:
        file_path.parent.mkdir(parents=True, exist_ok=True)
        with open(file_path, 'a', encoding='utf-8') as f:
            f.write(json.dumps(obj, ensure_ascii=False, sort_keys=True) + '\n')
        return True

    except OSError as e:
        print(f"❌ JSONL 추가 실패: {e}")
        return False


CSV_COLUMNS = ['index', 'seed', 'verdict', 'precision', 'seconds', 'error']


def write_csv_summary(file_path: Path, trials: List[Dict[str, Any]]) -> bool:
    """
    시행별 한 줄 CSV 요약

    Args:
        file_path: 출력 경로
        trials: TrialRecord.model_dump() 목록

    Returns:
        성공 여부
    """
    try:
        file_path.parent.mkdir(parents=True, exist_ok=True)
        with open(file_path, 'w', encoding='utf-8', newline='') as f:
            writer = csv.DictWriter(f, fieldnames=CSV_COLUMNS, extrasaction='ignore')
            writer.writeheader()
            for trial in trials:
                writer.writerow({k: trial.get(k) if trial.get(k) is not None else '' for k in CSV_COLUMNS})
        return True

    except OSError as e:
        print(f"❌ CSV 쓰기 실패: {e}")
        return False
