"""Default settings shared by the library and the command line."""

TOP_N = 100
MIN_TOPIC_DOCS = 20
RELEVANCE_THRESHOLD = 0.6960
DOMINANCE_RATIO = 0.9
NORMALIZE_BEFORE_AVERAGE = True

TAG_MARKER = "[TAG]"
PREPEND_SEPARATOR = " | "

# Proportions of the 132,766 / 5,248 / 6,242 article split.
SPLIT_RATIOS = (0.9203, 0.0364, 0.0433)


def defaults():
    """Return every tunable default as a plain dict (for introspection and ``--show-defaults``)."""
    return {
        "top_n": TOP_N,
        "min_topic_docs": MIN_TOPIC_DOCS,
        "relevance_threshold": RELEVANCE_THRESHOLD,
        "dominance_ratio": DOMINANCE_RATIO,
        "normalize_before_average": NORMALIZE_BEFORE_AVERAGE,
        "tag_marker": TAG_MARKER,
        "prepend_separator": PREPEND_SEPARATOR,
        "split_ratios": list(SPLIT_RATIOS),
    }
