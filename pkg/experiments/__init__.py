"""Experiment-Runner der Kommandozeile"""
