# Engine package