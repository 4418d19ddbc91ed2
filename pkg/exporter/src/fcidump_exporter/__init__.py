"""FCIDUMP fixture exporter: self-contained RHF over contracted Gaussians."""

from .export import ActiveSpaceHamiltonian, ExportError, compute_active_hamiltonian, export_fcidump
from .molecules import MOLECULES, MoleculeSpec

__version__ = "0.1.0"
