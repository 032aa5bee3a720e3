"""querysynth: query-driven program synthesis against deterministic oracles.

Subpackages:
  karel     grid-world DSL (parser, executor, worlds)
  listproc  list-processing DSL (values, interpreter, samplers)
  fspace    Gaussian example-set embeddings, contrastive training
  query     oracles, candidate pools, query-selection strategies
  synth     enumerative synthesis and the functional-equivalence proxy
  harness   metrics, experiment runner, command-line interface
"""

__version__ = "0.1.0"
