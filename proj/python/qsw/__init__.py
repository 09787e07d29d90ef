"""Continuous-time classical, quantum, and quantum stochastic walks on graphs.

The heavy lifting happens in the compiled ``qsw._core`` extension: sparse
superoperator assembly and Krylov-subspace matrix-exponential action. Graphs
come in as scipy sparse adjacency matrices (column = source vertex), states as
numpy arrays.
"""

from qsw._core import (
    Graph,
    GeneratorMatrix,
    GoogleMatrix,
    Hamiltonian,
    IoError,
    LindbladOperator,
    NumericalError,
    Superoperator,
    ValidationError,
    WalkResult,
    __version__,
    assemble_superoperator,
    cayley_tree,
    classical_pagerank,
    classical_random_walk,
    dense_expm,
    dephasing_set,
    erdos_renyi,
    expm_multiply,
    fmo_hamiltonian,
    fmo_lindblad_set,
    glued_binary_tree,
    google_matrix,
    graph_from_adjacency,
    graph_from_edges,
    graph_hamiltonian,
    generator_matrix,
    kron,
    lindblad_set,
    lindblad_set_dense,
    line_graph,
    matricize,
    pagerank_example_graph,
    quantum_stochastic_walk,
    quantum_walk,
    random_glued_binary_tree,
    read_edge_list,
    read_matrix_market,
    read_matrix_market_matrix,
    stationary_state,
    symmetrize,
    vectorize,
    walk_series,
    write_edge_list,
)

__all__ = [name for name in dir() if not name.startswith("_")]
