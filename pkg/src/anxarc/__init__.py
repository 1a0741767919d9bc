"""anxarc: lexicon-based anxiety scoring and temporal arc analysis.

Scores timestamped text posts against a word-anxiety association lexicon,
slices them by hour of day, weekday, verb tense, and pronoun, aggregates
per-slice anxiety scores, and tests inter-slice differences for
significance. A synthetic-corpus harness validates how faithfully the
pipeline recovers planted anxiety arcs.
"""

__version__ = "0.1.0"
