from .app import create_app
from .storage import CaseStore

__all__ = ["create_app", "CaseStore"]
