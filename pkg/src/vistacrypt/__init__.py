"""Differential trail search for SIMON32/SIMECK32 with quota-sampled NMCS."""

from .ciphers import (CipherSpec, DiffState, Variant, and_diff_inputs, decrypt,
                      empirical_trail_probability, encrypt, hamming_weight,
                      replay_trail, rotl, round_backward_diff, round_forward_diff,
                      simeck32, simon32, spec_by_name, xdp_and_bruteforce,
                      xdp_and_weight)
from .experiments import (ExperimentRecord, IqrMode, SummaryStats, clean_data,
                          read_csv, required_simulations, run_batch, summarize,
                          welch_t_test, write_csv)
from .graphs import (DiffGraph, GraphFormat, build_graph, export_graph,
                     graph_metrics, read_edge_csv)
from .pools import (DifferentialPool, QuotaSample, TransitionRecord, build_pool,
                    define_sample, load_pool, population_variance,
                    record_playout_paths, sample_variance, save_pool,
                    variance_reduction)
from .search import (DrawPolicy, SamplingContext, SearchConfig, SearchMode,
                     Technique, TrailResult, calibrate_iteration_cap,
                     random_path, run_search, select_random, two_way_search)

__version__ = "0.1.0"
