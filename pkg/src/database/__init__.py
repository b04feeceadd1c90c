"""Database Module"""
from .repository import (
    SQLiteQuantileRepository,
    DatabaseConnection,
    QuantileSchema,
    DatabaseException
)

__all__ = [
    "SQLiteQuantileRepository",
    "DatabaseConnection",
    "QuantileSchema",
    "DatabaseException"
]
