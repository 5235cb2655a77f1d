"""Analysis of Sanskrit kavya: scansion and meter, style, figures, and grading."""

__version__ = "0.1.0"
