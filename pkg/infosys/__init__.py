"""infosys - a finite-model workbench for information systems with witnesses."""

__version__ = "0.1.0"
