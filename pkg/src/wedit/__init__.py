"""Edit distance and optimal alignment between a string and a weighted automaton."""

from .alignment import AlignmentResult, Midpoint, UnreachableError, midpoint, optimal_alignment
from .automata import (INF, Arc, BackEdgeMarking, CyclicAutomatonError, EpsilonError, Transition,
                       TropicalWeight, WeightedAutomaton, WeightedTransducer, automaton_weight,
                       make_automaton, mark_back_edges, mirror, string_to_automaton, topological_order)
from .distance import EditDistanceQuery, LevelDistances, edit_distance, level_distances
from .edits import (Alignment, CostFunction, EditOp, InvalidEditOp, alignment_cost, apply_morphism,
                    edit_cost_transducer, levenshtein_costs)
from .lattice import (EditLattice, LatticeState, LevelBand, compose, edit_lattice_band,
                      final_weight_at, initial_weight_at)
from .shortest import (BackEdgeCount, Fifo, LevelMeta, Lifo, RunStats, ShortestFirst,
                       TopologicalOrder, make_back_edge_discipline, make_level_meta,
                       shortest_distance)

__version__ = "0.1.0"
