"""Bumpless pipe dreams, co-BPDs, droop moves and the Grothendieck-to-Schubert expansion."""

__version__ = "0.1.0"
