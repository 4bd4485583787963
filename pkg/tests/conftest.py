from hypothesis import settings

# The suite must be reproducibly green: fixed example order, no time limits.
settings.register_profile("ci", derandomize=True, deadline=None, max_examples=50)
settings.load_profile("ci")
