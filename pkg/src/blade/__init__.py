"""blade: curriculum-grounded study assistant engine.

Ingests course materials into metadata-annotated instructional units,
retrieves passages with a hybrid lexical/vector/metadata ranker, composes
evidence-pointing (answer-withholding) responses with verifiable citations,
serves the engine over HTTP, and ships the quiz-study analysis harness.
"""

__version__ = "0.1.0"
