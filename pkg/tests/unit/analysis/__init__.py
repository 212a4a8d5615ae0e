"""Unit tests for analysis modules."""