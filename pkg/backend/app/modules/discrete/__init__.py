from app.modules.discrete.models.discrete_model import DiscreteCouple, DiscreteOperator, SteinWeissCheck
from app.modules.discrete.repository.discrete_repo import DiscreteRepo

__all__ = ["DiscreteCouple", "DiscreteOperator", "SteinWeissCheck", "DiscreteRepo"]
