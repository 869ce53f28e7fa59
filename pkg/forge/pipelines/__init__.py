"""
Pipelines wiring the forge modules into end-to-end constructions,
the command line entry point and the bundled acceptance suite
"""

PIPELINES = ("sofic-check", "sofic-amplify", "subshift-lef",
             "odometer-compress", "lamp-embed", "ballstats-compare",
             "selftest")
