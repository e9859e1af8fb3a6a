"""Packaged data files: transliteration table, lexicons, tag mapping."""
