"""QKRLS prognostics: self-prediction of turbofan degradation and RUL estimation."""
