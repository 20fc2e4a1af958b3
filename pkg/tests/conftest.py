from hypothesis import HealthCheck, settings

# Exact-arithmetic sweeps can be slow per example on shared CI runners;
# the wall-clock deadline adds flakiness without adding coverage.
settings.register_profile(
    "nrlatency",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("nrlatency")
