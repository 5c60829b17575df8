import pytest

from tabletutor.curriculum import export_knowledge, teach_curriculum


@pytest.fixture(scope="session")
def trained_knowledge():
    """Knowledge exported after teaching move, shift, store under O+S."""
    return export_knowledge(teach_curriculum("O+S"))


@pytest.fixture(scope="session")
def move_knowledge():
    """Knowledge exported after teaching only move."""
    return export_knowledge(teach_curriculum("O+S", ("move",)))
