import sys


class GraphError(ValueError):
    """Base class for invalid input graphs."""


class GraphParseError(GraphError):
    def __init__(self, line_number: int, message: str):
        self.line_number = line_number
        super().__init__(f"line {line_number}: {message}")


class SelfLoopError(GraphError):
    def __init__(self, vertex: int, line_number: int = None):
        self.vertex = vertex
        self.line_number = line_number
        where = f" (line {line_number})" if line_number is not None else ""
        super().__init__(f"self-loop at vertex {vertex}{where}")


class DuplicateEdgeError(GraphError):
    def __init__(self, edge, line_number: int = None):
        self.edge = edge
        self.line_number = line_number
        where = f" (line {line_number})" if line_number is not None else ""
        super().__init__(f"duplicate edge {edge[0]}-{edge[1]}{where}")


class DisconnectedGraphError(GraphError):
    def __init__(self, components: int):
        self.components = components
        super().__init__(f"graph is disconnected ({components} components)")


class InfeasibleGraphError(GraphError):
    """Generator parameters admit no graph of the requested kind."""


def handle_parse_error(error):
    print("[GRAPH ERROR] Reason:", str(error), file=sys.stderr)
    print("[FIX] Each line must read 'u v [w]' with non-negative integer ids and a positive weight (decimal or p/q).", file=sys.stderr)


def handle_self_loop_error(error):
    print("[GRAPH ERROR] Reason:", str(error), file=sys.stderr)
    print("[FIX] Remove edges whose endpoints coincide; the construction needs a loop-free graph.", file=sys.stderr)


def handle_duplicate_edge_error(error):
    print("[GRAPH ERROR] Reason:", str(error), file=sys.stderr)
    print("[FIX] List each unordered pair once; merge parallel edges by adding their weights.", file=sys.stderr)


def handle_disconnected_graph_error(error):
    print("[GRAPH ERROR] Reason:", str(error), file=sys.stderr)
    print("[FIX] Use a connected graph whose vertex ids run from 0 to n-1 without gaps.", file=sys.stderr)


def handle_unknown_graph_error(error):
    print("[GRAPH ERROR] Reason:", str(error), file=sys.stderr)
    print("[FIX] Check the generator parameters (n, d, seed) or the edge-list file.", file=sys.stderr)


def handle_graph_error(error):
    """Dispatch to the handler matching the error type."""
    if isinstance(error, GraphParseError):
        handle_parse_error(error)
    elif isinstance(error, SelfLoopError):
        handle_self_loop_error(error)
    elif isinstance(error, DuplicateEdgeError):
        handle_duplicate_edge_error(error)
    elif isinstance(error, DisconnectedGraphError):
        handle_disconnected_graph_error(error)
    else:
        handle_unknown_graph_error(error)
