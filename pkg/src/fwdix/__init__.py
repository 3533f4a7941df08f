"""Vertex- and edge-forwarding indices of graphs and digraphs."""

from .graph import (ConnectivityReport, DisconnectedGraph, DistanceMatrix, Graph,
                    LimitExceeded, MalformedEdge, MixedDirectedness, build_graph,
                    cartesian_product, connectivity, distances, enumerate_connected_graphs,
                    load_graph, save_graph)
from .routing import (InvalidRouting, LoadProfile, Routing, RoutingClass, classify_routing,
                      load_profile, shortest_path_routing, validate_routing)
from .solver import (BudgetExhausted, NotRowRegular, SearchLimits, SolveResult,
                     cut_bound_edge, exact_index, heuristic_index, lower_bound_A,
                     lower_bound_B, transitive_formula)
from .bounds import (BoundReport, OutOfCatalog, connectivity_bounds, degree_bounds,
                     digraph_bounds, enumerative_min_index, graph_bounds,
                     min_index_closed_forms, product_optimal, product_upper,
                     relation_check, trivial_bounds)
from .families import (BadParams, FamilySpec, NoClaim, VerificationRecord, closed_form,
                       generate, verify_family)

__version__ = "0.1.0"
