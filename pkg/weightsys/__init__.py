"""Exact universal Lie algebra weight systems on permutations."""
from loguru import logger

logger.disable(__name__)
