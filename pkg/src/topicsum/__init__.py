"""Topic-controllable summarization toolkit.

Scores summaries with the Summarization Topic Affinity Score (STAS), prepares
control-token inputs (topic prepending and ``[TAG]`` tagging) and compiles
two-topic super-article training sets.
"""

from .config import DOMINANCE_RATIO, MIN_TOPIC_DOCS, RELEVANCE_THRESHOLD, TOP_N
from .control_tokens import ControlledDocument, apply_both, prepend_topic, strip_controls, tag_document
from .corpus_io import Corpus, Document, filter_min_topic_frequency, load_corpus, save_corpus
from .dataset_compiler import CompileStats, SuperArticle, build_intermediate, compile_pairs, split_dataset
from .errors import CorpusError, NoContentError, TopicsumError, UnknownTopicError
from .fixture import generate_fixture
from .rouge import RougeScores, rouge, rouge_l, rouge_n
from .stas import StasReport, score_batch, stas_score
from .textproc import Token, lemmatize, split_sentences, tokenize
from .topic_model import TermSet, TopicModel, assign_topic, build_prototypes, top_terms
from .vectorizer import SparseVector, TfIdfModel, cosine, fit, transform

__version__ = "0.1.0"
