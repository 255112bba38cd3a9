"""
Reading and writing hypergraph files and JSON reports.
"""
