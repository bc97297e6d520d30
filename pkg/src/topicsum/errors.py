class TopicsumError(ValueError):
    """Base class for all recoverable errors raised by topicsum."""


class CorpusError(TopicsumError):
    pass


class NoContentError(TopicsumError):
    """The text has no lemma in the fitted vocabulary."""

    def __init__(self, message="no in-vocabulary content"):
        super().__init__(message)


class UnknownTopicError(TopicsumError):
    def __init__(self, topic, known):
        self.topic = topic
        self.known = list(known)
        super().__init__(f"unknown topic {topic!r}; known topics: {', '.join(self.known)}")
