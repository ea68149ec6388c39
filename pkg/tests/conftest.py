import hypothesis

# Keep the whole suite inside the 10-second budget; property tests stay
# meaningful at this breadth because the strategies are narrow by design.
hypothesis.settings.register_profile(
    "fast", max_examples=25, deadline=None, derandomize=True
)
hypothesis.settings.load_profile("fast")
