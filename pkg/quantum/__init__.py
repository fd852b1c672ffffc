"""Rundenmodell der Quanten-Pipeline"""
