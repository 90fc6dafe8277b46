"""
Run script for the HDX Product Complexes CLI
"""
import sys

import click

# Import error handler modules
from src.errors import complex_errors, graph_errors, spectrum_errors

INPUT_ERROR_EXIT = 2
NUMERICAL_ERROR_EXIT = 3


def main(argv=None) -> int:
    """
    Run the command-line application and route failures to the error handlers

    Args:
        argv: Arguments (defaults to sys.argv[1:])

    Returns:
        Exit code: 0 success, 1 failed verification, 2 input or parameter error,
        3 numerical error
    """
    from app import cli

    try:
        result = cli.main(args=argv, prog_name="hdx", standalone_mode=False)
        return result if isinstance(result, int) else 0
    except KeyboardInterrupt:
        print("\nStopped by user", file=sys.stderr)
        return 130
    except click.exceptions.Abort:
        return 1
    except click.ClickException as e:
        e.show()
        return INPUT_ERROR_EXIT
    except graph_errors.GraphError as e:
        graph_errors.handle_graph_error(e)
        return INPUT_ERROR_EXIT
    except complex_errors.ComplexError as e:
        complex_errors.handle_complex_error(e)
        return INPUT_ERROR_EXIT
    except spectrum_errors.SpectrumError as e:
        spectrum_errors.handle_spectrum_error(e)
        if isinstance(e, ValueError):
            return INPUT_ERROR_EXIT
        return NUMERICAL_ERROR_EXIT
    except OSError as e:
        print(f"[FILE ERROR] Reason: {e}", file=sys.stderr)
        print("[FIX] Check that the input exists and the output directory is writable.", file=sys.stderr)
        return INPUT_ERROR_EXIT


if __name__ == "__main__":
    sys.exit(main())
