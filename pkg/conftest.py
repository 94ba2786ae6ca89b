import os

from hypothesis import HealthCheck, settings

# Symbolic matrix products are slow enough to trip the default deadline
settings.register_profile("cb", deadline=None, max_examples=30,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=300,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "cb"))
