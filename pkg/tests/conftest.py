from hypothesis import settings

# fixed seeds keep the suite reproducible and its runtime predictable
settings.register_profile("repro", derandomize=True, deadline=None, database=None, print_blob=True)
settings.load_profile("repro")
