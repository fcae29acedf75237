"""Model server: BERT token-classifier training and /v1/tag serving.

Couples to the extraction toolkit only through the CoNLL dataset format it
trains on and the /v1/tag wire protocol it serves.
"""

from .labels import LABELS, LabelError, read_conll
from .server import TagModel, TagServer, serve
from .train import ModelSize, PretrainConfig, TrainingConfig, pretrain, train
from .vocab import WordVocab

__all__ = [
    "LABELS", "LabelError", "ModelSize", "PretrainConfig", "TagModel",
    "TagServer", "TrainingConfig", "WordVocab", "pretrain", "read_conll",
    "serve", "train",
]
